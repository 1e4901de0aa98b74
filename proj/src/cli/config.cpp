#include <fstream>
#include <sstream>

#include "heunwell/cli.hpp"
#include "heunwell/errors.hpp"

namespace heunwell::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot read config file '" + path + "'");
  std::map<std::string, std::string> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line.substr(0, line.find_first_of("#;")));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw InvalidParameter("config file '" + path + "' line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) {
      throw InvalidParameter("config file '" + path + "' line " + std::to_string(line_no) + ": empty key");
    }
    entries[key] = value;
  }
  if (entries.empty()) throw InvalidParameter("config file '" + path + "' contains no parameters");
  return entries;
}

}  // namespace heunwell::cli
