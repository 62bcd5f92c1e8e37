#include "frobcount/config.hpp"

#include <algorithm>
#include <sstream>

#include "frobcount/error.hpp"

namespace frobcount {

std::vector<std::string> config_to_args(const std::string& text) {
  std::vector<std::string> args;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ParseError, "config line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error(ErrorCode::ParseError, "config line " + std::to_string(line_no) + ": empty key");
    std::replace(key.begin(), key.end(), '_', '-');
    if (value == "false") continue;
    args.push_back(value == "true" ? "--" + key : "--" + key + "=" + value);
  }
  return args;
}

}  // namespace frobcount
