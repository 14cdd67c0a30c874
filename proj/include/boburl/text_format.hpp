#ifndef BOBURL_TEXT_FORMAT_HPP
#define BOBURL_TEXT_FORMAT_HPP

#include <charconv>
#include <string>

namespace boburl {

// Shortest decimal that parses back to the same double (to_chars default).
inline void append_real(std::string& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

inline std::string format_real(double value) {
  std::string out;
  append_real(out, value);
  return out;
}

}  // namespace boburl

#endif  // BOBURL_TEXT_FORMAT_HPP
