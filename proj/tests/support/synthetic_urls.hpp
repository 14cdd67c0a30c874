// Two synthetic URL families with clearly different byte distributions:
// dictionary-word hosts with shallow paths versus hex-heavy hosts with
// token-laden paths. Used by the trainer tests and the acceptance run.
#ifndef BOBURL_TESTS_SUPPORT_SYNTHETIC_URLS_HPP
#define BOBURL_TESTS_SUPPORT_SYNTHETIC_URLS_HPP

#include <array>
#include <string>

#include "boburl/datasets.hpp"
#include "boburl/rng.hpp"

namespace boburl::testing {

inline constexpr std::array<const char*, 48> kWords = {
    "acorn",  "amber",  "basin",  "bridge", "candle", "cedar",  "cloud",
    "copper", "daisy",  "delta",  "ember",  "fable",  "falcon", "garden",
    "grove",  "harbor", "hazel",  "island", "juniper","kettle", "lantern",
    "ledger", "maple",  "meadow", "mill",   "nectar", "oak",    "orchid",
    "pebble", "pine",   "quill",  "raven",  "ridge",  "river",  "saddle",
    "sage",   "spruce", "stone",  "summit", "thistle","timber", "trail",
    "valley", "walnut", "willow", "winter", "yarrow", "zephyr"};

inline std::string random_word(RandomStream& rng) {
  return kWords[rng.uniform_index(kWords.size())];
}

inline std::string random_hex(RandomStream& rng, std::size_t length) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s;
  s.reserve(length);
  for (std::size_t i = 0; i < length; ++i) s += kHex[rng.uniform_index(16)];
  return s;
}

inline std::string random_token(RandomStream& rng, std::size_t length) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";
  std::string s;
  s.reserve(length);
  for (std::size_t i = 0; i < length; ++i)
    s += kAlphabet[rng.uniform_index(sizeof(kAlphabet) - 1)];
  return s;
}

inline std::string benign_url(RandomStream& rng) {
  static constexpr std::array<const char*, 3> kTlds = {".com", ".org", ".net"};
  std::string url = "http://www.";
  url += random_word(rng);
  url += random_word(rng);
  url += kTlds[rng.uniform_index(kTlds.size())];
  switch (rng.uniform_index(3)) {
    case 0:
      url += "/";
      break;
    case 1:
      url += "/" + random_word(rng);
      break;
    default:
      url += "/" + random_word(rng) + "/" + random_word(rng) + ".html";
      break;
  }
  return url;
}

inline std::string malicious_url(RandomStream& rng) {
  static constexpr std::array<const char*, 3> kTlds = {".biz", ".info", ".xyz"};
  std::string url = "http://";
  url += random_hex(rng, 8 + rng.uniform_index(9));
  url += kTlds[rng.uniform_index(kTlds.size())];
  url += "/" + random_token(rng, 10 + rng.uniform_index(11));
  url += "/" + random_token(rng, 6 + rng.uniform_index(7));
  url += "?id=" + random_hex(rng, 12 + rng.uniform_index(9));
  if (rng.uniform_index(2) == 0) url += "&s=" + random_token(rng, 8);
  return url;
}

// per_class entries of each family, benign first.
inline Dataset synthetic_families(std::size_t per_class, std::uint64_t seed) {
  RandomStream rng(seed);
  Dataset dataset;
  dataset.provenance = "synthetic url families";
  dataset.entries.reserve(2 * per_class);
  for (std::size_t i = 0; i < per_class; ++i)
    dataset.entries.push_back({benign_url(rng), Label::kBenign, std::nullopt});
  for (std::size_t i = 0; i < per_class; ++i)
    dataset.entries.push_back(
        {malicious_url(rng), Label::kMalicious, std::nullopt});
  return dataset;
}

}  // namespace boburl::testing

#endif  // BOBURL_TESTS_SUPPORT_SYNTHETIC_URLS_HPP
