#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <unordered_set>

#include "boburl/datasets.hpp"
#include "boburl/errors.hpp"

using namespace boburl;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / "boburl_dataset_tests";
  fs::create_directories(dir);
  fs::path file = dir / name;
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  out << content;
  return file;
}

Dataset make_dataset(std::initializer_list<const char*> urls,
                     Label label = Label::kBenign) {
  Dataset d;
  for (const char* url : urls) d.entries.push_back({url, label, std::nullopt});
  return d;
}

std::vector<std::string> urls_of(const Dataset& d) {
  std::vector<std::string> urls;
  for (const auto& e : d.entries) urls.push_back(e.url);
  return urls;
}

}  // namespace

TEST_CASE("load_phishtank_csv labels every data row malicious") {
  fs::path file = temp_file("phishtank_basic.csv",
                            "phish_id,url,submission_time\n"
                            "1,http://evil.example/a,2017-04-01\n"
                            "2,http://evil.example/b,2017-04-02\n"
                            "3,http://evil.example/c,2017-04-03\n");
  Dataset d = load_phishtank_csv(file);
  REQUIRE(d.size() == 3);
  for (const auto& e : d.entries) CHECK(e.label == Label::kMalicious);
  CHECK(d.entries[0].url == "http://evil.example/a");
}

TEST_CASE("load_phishtank_csv honors quoted fields with commas") {
  fs::path file = temp_file("phishtank_quoted.csv",
                            "phish_id,url,detail\n"
                            "1,\"http://evil.example/x,y\",\"note, with comma\"\n"
                            "2,\"http://evil.example/q\"\"z\",plain\n");
  Dataset d = load_phishtank_csv(file);
  REQUIRE(d.size() == 2);
  CHECK(d.entries[0].url == "http://evil.example/x,y");
  CHECK(d.entries[1].url == "http://evil.example/q\"z");
}

TEST_CASE("load_phishtank_csv counts skipped empty-url rows") {
  fs::path file = temp_file("phishtank_empty.csv",
                            "phish_id,url\n"
                            "1,http://evil.example/a\n"
                            "2,\n"
                            "3,http://evil.example/c\n");
  std::size_t skipped = 0;
  Dataset d = load_phishtank_csv(file, &skipped);
  CHECK(d.size() == 2);
  CHECK(skipped == 1);
}

TEST_CASE("load_phishtank_csv requires a url column") {
  fs::path file = temp_file("phishtank_nocol.csv",
                            "phish_id,address\n1,http://evil.example/\n");
  CHECK_THROWS_AS(load_phishtank_csv(file), DataError);
  CHECK_THROWS_AS(load_phishtank_csv(fs::path("nonexistent.csv")), DataError);
}

TEST_CASE("load_url_list skips comments and blanks") {
  fs::path file = temp_file("list.txt",
                            "http://a.example/\n"
                            "# comment line\n"
                            "\n"
                            "http://b.example/\n");
  Dataset d = load_url_list(file, Label::kBenign);
  REQUIRE(d.size() == 2);
  CHECK(d.entries[0].url == "http://a.example/");
  CHECK(d.entries[1].label == Label::kBenign);

  fs::path empty = temp_file("empty.txt", "");
  CHECK(load_url_list(empty, Label::kMalicious).size() == 0);
}

TEST_CASE("load_access_log parses epoch and url") {
  fs::path file = temp_file("log.tsv", "1493078400\thttp://a.example/\n");
  Dataset d = load_access_log(file);
  REQUIRE(d.size() == 1);
  CHECK(d.entries[0].url == "http://a.example/");
  CHECK(d.entries[0].label == Label::kBenign);
  REQUIRE(d.entries[0].timestamp.has_value());
  CHECK(*d.entries[0].timestamp == 1493078400);
}

TEST_CASE("load_access_log skips malformed lines with a count") {
  fs::path file = temp_file("log_bad.tsv",
                            "nourl\n"
                            "1493078400\thttp://a.example/\n"
                            "notanumber\thttp://b.example/\n"
                            "42\t\n");
  std::size_t skipped = 0;
  Dataset d = load_access_log(file, &skipped);
  CHECK(d.size() == 1);
  CHECK(skipped == 3);
}

TEST_CASE("load_access_log covers distinct hour buckets") {
  std::string content;
  for (int hour = 0; hour < 24; ++hour) {
    content += std::to_string(1493078400 + hour * 3600) +
               "\thttp://h.example/" + std::to_string(hour) + "\n";
  }
  fs::path file = temp_file("log_hours.tsv", content);
  Dataset d = load_access_log(file);
  REQUIRE(d.size() == 24);
  std::set<std::int64_t> buckets;
  for (const auto& e : d.entries) buckets.insert(*e.timestamp / 3600);
  CHECK(buckets.size() == 24);
}

TEST_CASE("cleanse removes exact url matches only") {
  Dataset whitelist = make_dataset({"A", "B", "C"});
  Dataset blacklist = make_dataset({"B"}, Label::kMalicious);
  CHECK(urls_of(cleanse(whitelist, blacklist)) ==
        std::vector<std::string>{"A", "C"});

  Dataset disjoint = make_dataset({"X", "Y"}, Label::kMalicious);
  CHECK(urls_of(cleanse(whitelist, disjoint)) ==
        std::vector<std::string>{"A", "B", "C"});

  Dataset superset = make_dataset({"A", "B", "C", "D"}, Label::kMalicious);
  CHECK(cleanse(whitelist, superset).size() == 0);
}

TEST_CASE("cleanse output never intersects the blacklist") {
  Dataset whitelist;
  Dataset blacklist;
  for (int i = 0; i < 200; ++i) {
    whitelist.entries.push_back(
        {"http://w.example/" + std::to_string(i), Label::kBenign, std::nullopt});
    if (i % 3 == 0)
      blacklist.entries.push_back({"http://w.example/" + std::to_string(i),
                                   Label::kMalicious, std::nullopt});
  }
  Dataset survivors = cleanse(whitelist, blacklist);
  std::unordered_set<std::string> banned;
  for (const auto& e : blacklist.entries) banned.insert(e.url);
  for (const auto& e : survivors.entries) CHECK(!banned.contains(e.url));
  CHECK(survivors.size() == whitelist.size() - blacklist.size());
}

TEST_CASE("balance_sample draws per-hour then to target, reproducibly") {
  Dataset log;
  // 24 hours, 40 entries each.
  for (int hour = 0; hour < 24; ++hour) {
    for (int i = 0; i < 40; ++i) {
      log.entries.push_back({"http://h/" + std::to_string(hour) + "/" +
                                 std::to_string(i),
                             Label::kBenign,
                             std::int64_t(1493078400) + hour * 3600 + i});
    }
  }

  Dataset sampled = balance_sample(log, 10, 100, 99);
  CHECK(sampled.size() == 100);

  // Stage 1 cap: no more than per_hour survivors from any bucket.
  std::map<std::int64_t, int> per_bucket;
  for (const auto& e : sampled.entries) ++per_bucket[*e.timestamp / 3600];
  for (const auto& [bucket, count] : per_bucket) CHECK(count <= 10);

  Dataset again = balance_sample(log, 10, 100, 99);
  CHECK(urls_of(again) == urls_of(sampled));

  Dataset different = balance_sample(log, 10, 100, 100);
  CHECK(urls_of(different) != urls_of(sampled));
}

TEST_CASE("balance_sample with generous caps returns the whole log") {
  Dataset log;
  for (int i = 0; i < 50; ++i)
    log.entries.push_back({"u" + std::to_string(i), Label::kBenign,
                           std::int64_t(i) * 1800});
  Dataset all = balance_sample(log, 1000, 50, 7);
  CHECK(all.size() == 50);
  std::vector<std::string> sampled_urls = urls_of(all);
  std::vector<std::string> log_urls = urls_of(log);
  std::set<std::string> got(sampled_urls.begin(), sampled_urls.end());
  std::set<std::string> expected(log_urls.begin(), log_urls.end());
  CHECK(got == expected);
}

TEST_CASE("balance_sample rejects overdrawn targets and missing timestamps") {
  Dataset log;
  for (int i = 0; i < 10; ++i)
    log.entries.push_back({"u" + std::to_string(i), Label::kBenign,
                           std::int64_t(i) * 3600});
  CHECK_THROWS_AS(balance_sample(log, 1, 11, 1), DataError);

  Dataset no_ts = make_dataset({"plain"});
  CHECK_THROWS_AS(balance_sample(no_ts, 1, 1, 1), DataError);
}

TEST_CASE("merge_shuffle_split honors the floor split") {
  Dataset black, white;
  for (int i = 0; i < 10; ++i) {
    black.entries.push_back({"b" + std::to_string(i), Label::kMalicious,
                             std::nullopt});
    white.entries.push_back({"w" + std::to_string(i), Label::kBenign,
                             std::nullopt});
  }
  auto [train, val] = merge_shuffle_split(black, white, 0.5, 3);
  CHECK(train.size() == 10);
  CHECK(val.size() == 10);

  auto [train8, val8] = merge_shuffle_split(black, white, 0.8, 3);
  CHECK(train8.size() == 16);
  CHECK(val8.size() == 4);
}

TEST_CASE("merge_shuffle_split partitions the union exactly") {
  Dataset black, white;
  for (int i = 0; i < 37; ++i)
    black.entries.push_back({"b" + std::to_string(i), Label::kMalicious,
                             std::nullopt});
  for (int i = 0; i < 53; ++i)
    white.entries.push_back({"w" + std::to_string(i), Label::kBenign,
                             std::nullopt});
  auto [train, val] = merge_shuffle_split(black, white, 0.8, 17);

  std::multiset<std::string> combined;
  for (const auto& e : train.entries) combined.insert(e.url);
  for (const auto& e : val.entries) combined.insert(e.url);
  std::multiset<std::string> expected;
  for (const auto& e : black.entries) expected.insert(e.url);
  for (const auto& e : white.entries) expected.insert(e.url);
  CHECK(combined == expected);

  auto [train2, val2] = merge_shuffle_split(black, white, 0.8, 17);
  CHECK(urls_of(train2) == urls_of(train));
  CHECK(urls_of(val2) == urls_of(val));
}

TEST_CASE("merge_shuffle_split paper-scale counts") {
  Dataset black, white;
  for (int i = 0; i < 26722; ++i) {
    black.entries.push_back({"b" + std::to_string(i), Label::kMalicious,
                             std::nullopt});
    white.entries.push_back({"w" + std::to_string(i), Label::kBenign,
                             std::nullopt});
  }
  auto [train, val] = merge_shuffle_split(black, white, 0.8, 1);
  CHECK(train.size() == 42755);
  CHECK(val.size() == 10689);
}

TEST_CASE("merge_shuffle_split rejects bad fractions and empty unions") {
  Dataset empty;
  Dataset one = make_dataset({"x"});
  CHECK_THROWS_AS(merge_shuffle_split(empty, empty, 0.8, 1), DataError);
  CHECK_THROWS_AS(merge_shuffle_split(one, empty, 0.0, 1), DataError);
  CHECK_THROWS_AS(merge_shuffle_split(one, empty, 1.0, 1), DataError);
}

TEST_CASE("dedup_by_url keeps first occurrences in order") {
  Dataset d = make_dataset({"A", "A", "B"});
  CHECK(urls_of(dedup_by_url(d)) == std::vector<std::string>{"A", "B"});

  Dataset distinct = make_dataset({"C", "A", "B"});
  CHECK(urls_of(dedup_by_url(distinct)) ==
        std::vector<std::string>{"C", "A", "B"});

  Dataset empty;
  CHECK(dedup_by_url(empty).size() == 0);
}

TEST_CASE("labeled tsv round-trips entries and labels") {
  Dataset d;
  d.entries.push_back({"http://a.example/", Label::kBenign, std::nullopt});
  d.entries.push_back({"http://evil.example/x", Label::kMalicious,
                       std::nullopt});
  fs::path file = fs::temp_directory_path() / "boburl_dataset_tests" /
                  "roundtrip.tsv";
  fs::create_directories(file.parent_path());
  save_labeled_tsv(d, file);
  Dataset loaded = load_labeled_tsv(file);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded.entries[0].url == d.entries[0].url);
  CHECK(loaded.entries[0].label == Label::kBenign);
  CHECK(loaded.entries[1].label == Label::kMalicious);

  fs::path bad = temp_file("bad.tsv", "2\thttp://x/\n");
  CHECK_THROWS_AS(load_labeled_tsv(bad), DataError);
}
