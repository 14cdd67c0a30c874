#include "boburl/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <string_view>
#include <unordered_set>

#include "boburl/errors.hpp"
#include "boburl/rng.hpp"

namespace boburl {

namespace {

std::ifstream open_or_throw(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cannot read " + file.string());
  return in;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

// Reads one CSV record (quoted fields may contain commas, "" escapes, and
// newlines). Returns false at end of input.
bool next_csv_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  int c = in.get();
  if (c == std::istream::traits_type::eof()) return false;

  std::string field;
  bool quoted = false;
  while (true) {
    if (c == std::istream::traits_type::eof()) {
      fields.push_back(std::move(field));
      return true;
    }
    char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      fields.push_back(std::move(field));
      return true;
    } else {
      field += ch;
    }
    c = in.get();
  }
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

std::int64_t hour_bucket(std::int64_t timestamp) {
  // Floor division keeps pre-1970 timestamps in well-defined buckets.
  std::int64_t q = timestamp / 3600;
  if (timestamp % 3600 < 0) --q;
  return q;
}

}  // namespace

Dataset load_phishtank_csv(const std::filesystem::path& file,
                           std::size_t* skipped) {
  std::ifstream in = open_or_throw(file);
  std::vector<std::string> fields;
  if (!next_csv_record(in, fields))
    throw DataError(file.string() + ": empty file, expected a CSV header");

  std::size_t url_column = fields.size();
  for (std::size_t i = 0; i < fields.size(); ++i) {
    std::string_view name = fields[i];
    // Tolerate a UTF-8 BOM on the first header cell.
    if (i == 0 && name.starts_with("\xef\xbb\xbf")) name.remove_prefix(3);
    if (iequals(name, "url")) {
      url_column = i;
      break;
    }
  }
  if (url_column == fields.size())
    throw DataError(file.string() + ": header has no `url` column");

  Dataset dataset;
  dataset.provenance = "phishtank csv " + file.string();
  std::size_t skip_count = 0;
  while (next_csv_record(in, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // trailing newline
    if (url_column >= fields.size() || fields[url_column].empty()) {
      ++skip_count;
      continue;
    }
    dataset.entries.push_back(
        {std::move(fields[url_column]), Label::kMalicious, std::nullopt});
  }
  if (skipped != nullptr) *skipped = skip_count;
  return dataset;
}

Dataset load_url_list(const std::filesystem::path& file, Label label) {
  std::ifstream in = open_or_throw(file);
  Dataset dataset;
  dataset.provenance = "url list " + file.string();
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    dataset.entries.push_back({std::move(line), label, std::nullopt});
  }
  return dataset;
}

Dataset load_access_log(const std::filesystem::path& file,
                        std::size_t* skipped) {
  std::ifstream in = open_or_throw(file);
  Dataset dataset;
  dataset.provenance = "access log " + file.string();
  std::size_t skip_count = 0;
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    bool ok = tab != std::string::npos && tab > 0 && tab + 1 < line.size();
    std::int64_t ts = 0;
    if (ok) {
      auto [ptr, ec] = std::from_chars(line.data(), line.data() + tab, ts);
      ok = ec == std::errc() && ptr == line.data() + tab;
    }
    if (!ok) {
      ++skip_count;
      continue;
    }
    dataset.entries.push_back({line.substr(tab + 1), Label::kBenign, ts});
  }
  if (skipped != nullptr) *skipped = skip_count;
  return dataset;
}

Dataset load_labeled_tsv(const std::filesystem::path& file) {
  std::ifstream in = open_or_throw(file);
  Dataset dataset;
  dataset.provenance = "labeled tsv " + file.string();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    if (line.size() < 3 || (line[0] != '0' && line[0] != '1') ||
        line[1] != '\t')
      throw DataError(file.string() + " line " + std::to_string(line_no) +
                      ": expected `label<TAB>url`");
    Label label = line[0] == '1' ? Label::kMalicious : Label::kBenign;
    dataset.entries.push_back({line.substr(2), label, std::nullopt});
  }
  return dataset;
}

void save_labeled_tsv(const Dataset& dataset,
                      const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + file.string());
  for (const LabeledUrl& entry : dataset.entries) {
    out << static_cast<int>(entry.label) << '\t' << entry.url << '\n';
  }
  if (!out) throw DataError("write failed for " + file.string());
}

Dataset cleanse(const Dataset& whitelist, const Dataset& blacklist) {
  std::unordered_set<std::string_view> banned;
  banned.reserve(blacklist.entries.size());
  for (const LabeledUrl& entry : blacklist.entries) banned.insert(entry.url);

  Dataset cleansed;
  cleansed.provenance = whitelist.provenance + " cleansed";
  for (const LabeledUrl& entry : whitelist.entries) {
    if (!banned.contains(entry.url)) cleansed.entries.push_back(entry);
  }
  return cleansed;
}

Dataset balance_sample(const Dataset& log, std::size_t per_hour,
                       std::size_t target_size, std::uint64_t seed) {
  std::map<std::int64_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < log.entries.size(); ++i) {
    const LabeledUrl& entry = log.entries[i];
    if (!entry.timestamp.has_value())
      throw DataError("balance_sample: entry without timestamp: " + entry.url);
    buckets[hour_bucket(*entry.timestamp)].push_back(i);
  }

  RandomStream rng(seed);
  std::vector<std::size_t> pool;
  for (const auto& [bucket, indices] : buckets) {
    std::size_t take = std::min(per_hour, indices.size());
    for (std::size_t pos : rng.sample_without_replacement(indices.size(), take))
      pool.push_back(indices[pos]);
  }
  std::sort(pool.begin(), pool.end());

  if (target_size > pool.size())
    throw DataError("balance_sample: target size " +
                    std::to_string(target_size) + " exceeds stage-1 yield " +
                    std::to_string(pool.size()));

  Dataset sampled;
  sampled.provenance = log.provenance + " balanced";
  sampled.entries.reserve(target_size);
  for (std::size_t pos :
       rng.sample_without_replacement(pool.size(), target_size))
    sampled.entries.push_back(log.entries[pool[pos]]);
  return sampled;
}

std::pair<Dataset, Dataset> merge_shuffle_split(const Dataset& black,
                                                const Dataset& white,
                                                double train_fraction,
                                                std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw DataError("merge_shuffle_split: train_fraction must be in (0, 1)");
  std::vector<LabeledUrl> merged;
  merged.reserve(black.entries.size() + white.entries.size());
  merged.insert(merged.end(), black.entries.begin(), black.entries.end());
  merged.insert(merged.end(), white.entries.begin(), white.entries.end());
  if (merged.empty()) throw DataError("merge_shuffle_split: empty union");

  RandomStream rng(seed);
  rng.shuffle(std::span<LabeledUrl>(merged));

  auto train_count = static_cast<std::size_t>(
      std::floor(static_cast<double>(merged.size()) * train_fraction));
  Dataset train, validation;
  train.provenance = "train split of " + black.provenance + " + " +
                     white.provenance;
  validation.provenance = "validation split of " + black.provenance + " + " +
                          white.provenance;
  train.entries.assign(merged.begin(),
                       merged.begin() + static_cast<std::ptrdiff_t>(train_count));
  validation.entries.assign(
      merged.begin() + static_cast<std::ptrdiff_t>(train_count), merged.end());
  return {std::move(train), std::move(validation)};
}

Dataset dedup_by_url(const Dataset& dataset) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(dataset.entries.size());
  Dataset unique;
  unique.provenance = dataset.provenance;
  for (const LabeledUrl& entry : dataset.entries) {
    if (seen.insert(entry.url).second) unique.entries.push_back(entry);
  }
  return unique;
}

}  // namespace boburl
