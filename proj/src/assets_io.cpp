#include "stylomech/assets.hpp"

#include <fstream>
#include <sstream>

#include "stylomech/error.hpp"

namespace stylomech::assets {

std::string_view get(std::string_view name) {
  if (auto found = find(name)) return *found;
  throw Error(Errc::IoError, "no embedded asset named " + std::string(name));
}

std::vector<std::string> lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    const auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos) {
      const auto last = line.find_last_not_of(" \t\r");
      line = line.substr(first, last - first + 1);
      if (line.front() != '#') out.emplace_back(line);
    }
    pos = nl + 1;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(Errc::IoError, "failed reading " + path);
  return buffer.str();
}

}  // namespace stylomech::assets
