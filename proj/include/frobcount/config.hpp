#pragma once

// Plain "key = value" configuration files turned into long command-line options.

#include <string>
#include <vector>

namespace frobcount {

/// One "--key=value" per entry in file order; underscores in keys become dashes,
/// "true" yields a bare "--key" and "false" drops the entry. Throws ParseError.
std::vector<std::string> config_to_args(const std::string& text);

}  // namespace frobcount
