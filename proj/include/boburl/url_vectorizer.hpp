#ifndef BOBURL_URL_VECTORIZER_HPP
#define BOBURL_URL_VECTORIZER_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace boburl {

inline constexpr std::size_t kHistogramBins = 256;
inline constexpr std::size_t kUrlVectorDim = 2 * kHistogramBins;

// Host and path byte ranges of a URL. Bytes are kept exactly as they
// appeared in the input: no percent-decoding, no case folding. Userinfo
// and port stay inside the host bytes; query and fragment stay inside the
// path bytes.
struct ParsedUrl {
  std::string host;
  std::string path;
};

// Occurrence counts indexed by byte value.
using ByteHistogram = std::array<std::uint64_t, kHistogramBins>;

// Two concatenated L2-normalized byte histograms: indices 0..255 from the
// host part, 256..511 from the path part. A half whose source part is
// empty is all-zero.
using UrlVector = std::array<double, kUrlVectorDim>;

// Splits at the first "/" after "://" (or at the first "/" when there is
// no "://"). The scheme and "://" bytes belong to neither part; the "/"
// itself starts the path. Throws DataError on an empty url.
ParsedUrl split_url(std::string_view url);

// Emits the n input bytes followed by the n-1 overlap bytes, where the
// overlap of neighbors a,b is (low nibble of a) << 4 | (high nibble of b).
// The overlap bytes carry the combination information of adjacent
// characters; downstream only counts them, so output order is fixed but
// arbitrary.
std::vector<std::uint8_t> extract_bytes(std::string_view s);

ByteHistogram histogram(std::span<const std::uint8_t> bytes);

// split_url -> extract_bytes -> histogram per part, then each half is
// scaled by the reciprocal of its Euclidean norm (all-zero halves stay
// all-zero). Throws DataError on an empty url.
UrlVector vectorize(std::string_view url);

}  // namespace boburl

#endif  // BOBURL_URL_VECTORIZER_HPP
