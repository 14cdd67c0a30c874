#ifndef BOBURL_DATASETS_HPP
#define BOBURL_DATASETS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace boburl {

// Label encoding is fixed project-wide.
enum class Label : int { kBenign = 0, kMalicious = 1 };

struct LabeledUrl {
  std::string url;
  Label label = Label::kBenign;
  // Seconds since epoch; present on access-log entries.
  std::optional<std::int64_t> timestamp;
};

struct Dataset {
  std::vector<LabeledUrl> entries;
  std::string provenance;

  std::size_t size() const { return entries.size(); }
};

// PhishTank-shaped CSV dump: comma-separated with a header row naming a
// `url` column; fields may be double-quoted with embedded commas (and ""
// escapes). Every data row becomes one malicious entry; rows with an
// empty url are skipped and counted in *skipped. Throws DataError when
// the header has no url column or the file is unreadable.
Dataset load_phishtank_csv(const std::filesystem::path& file,
                           std::size_t* skipped = nullptr);

// One URL per line; blank lines and lines starting with '#' are ignored.
Dataset load_url_list(const std::filesystem::path& file, Label label);

// Tab-separated `epoch_seconds<TAB>url` lines, one benign entry each.
// Malformed lines are skipped and counted in *skipped.
Dataset load_access_log(const std::filesystem::path& file,
                        std::size_t* skipped = nullptr);

// The persisted dataset form: `label<TAB>url` lines.
Dataset load_labeled_tsv(const std::filesystem::path& file);
void save_labeled_tsv(const Dataset& dataset,
                      const std::filesystem::path& file);

// Drops whitelist entries whose exact url string appears in the
// blacklist; survivor order is preserved.
Dataset cleanse(const Dataset& whitelist, const Dataset& blacklist);

// Two-stage balanced sampling of a timestamped access log. Stage 1 picks
// min(per_hour, bucket size) entries uniformly without replacement from
// every hour bucket (bucket = floor(timestamp / 3600)); stage 2 picks
// target_size entries uniformly from the stage-1 pool. Selection order
// follows the input log. Fully determined by seed. Throws DataError when
// an entry has no timestamp or target_size exceeds the stage-1 yield.
Dataset balance_sample(const Dataset& log, std::size_t per_hour,
                       std::size_t target_size, std::uint64_t seed);

// Shuffles the concatenation of both datasets with a seeded uniform
// permutation; the first floor(N * train_fraction) entries become the
// training set, the rest the validation set.
std::pair<Dataset, Dataset> merge_shuffle_split(const Dataset& black,
                                                const Dataset& white,
                                                double train_fraction,
                                                std::uint64_t seed);

// Keeps the first occurrence of each exact url, order preserved.
Dataset dedup_by_url(const Dataset& dataset);

}  // namespace boburl

#endif  // BOBURL_DATASETS_HPP
