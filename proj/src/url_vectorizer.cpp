#include "boburl/url_vectorizer.hpp"

#include <cmath>

#include "boburl/errors.hpp"

namespace boburl {

ParsedUrl split_url(std::string_view url) {
  if (url.empty()) throw DataError("split_url: empty url");
  std::string_view rest = url;
  std::size_t scheme_end = url.find("://");
  if (scheme_end != std::string_view::npos) {
    rest = url.substr(scheme_end + 3);
  }
  std::size_t slash = rest.find('/');
  ParsedUrl parsed;
  if (slash == std::string_view::npos) {
    parsed.host = std::string(rest);
  } else {
    parsed.host = std::string(rest.substr(0, slash));
    parsed.path = std::string(rest.substr(slash));
  }
  return parsed;
}

std::vector<std::uint8_t> extract_bytes(std::string_view s) {
  const std::size_t n = s.size();
  std::vector<std::uint8_t> out;
  if (n == 0) return out;
  out.reserve(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(static_cast<std::uint8_t>(s[i]));
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto earlier = static_cast<std::uint8_t>(s[i]);
    auto later = static_cast<std::uint8_t>(s[i + 1]);
    out.push_back(static_cast<std::uint8_t>(((earlier & 0x0F) << 4) |
                                            ((later >> 4) & 0x0F)));
  }
  return out;
}

ByteHistogram histogram(std::span<const std::uint8_t> bytes) {
  ByteHistogram counts{};
  for (std::uint8_t b : bytes) ++counts[b];
  return counts;
}

namespace {

// Writes the L2-normalized histogram of one URL part into a 256-entry half.
void fill_half(std::string_view part, double* half) {
  ByteHistogram counts = histogram(extract_bytes(part));
  double sum_sq = 0.0;
  for (std::uint64_t c : counts) {
    double v = static_cast<double>(c);
    sum_sq += v * v;
  }
  if (sum_sq == 0.0) {
    for (std::size_t i = 0; i < kHistogramBins; ++i) half[i] = 0.0;
    return;
  }
  double inv_norm = 1.0 / std::sqrt(sum_sq);
  for (std::size_t i = 0; i < kHistogramBins; ++i) {
    half[i] = static_cast<double>(counts[i]) * inv_norm;
  }
}

}  // namespace

UrlVector vectorize(std::string_view url) {
  if (url.empty()) throw DataError("vectorize: empty url");
  ParsedUrl parsed = split_url(url);
  UrlVector vec{};
  fill_half(parsed.host, vec.data());
  fill_half(parsed.path, vec.data() + kHistogramBins);
  return vec;
}

}  // namespace boburl
