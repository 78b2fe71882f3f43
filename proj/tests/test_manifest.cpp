#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <random>
#include <sstream>

#include "tavkit/manifest.hpp"

using namespace tavkit;

namespace {

ClipRecord record(const std::string& path, const std::string& text = "") {
    ClipRecord r;
    r.file_path = path;
    r.text = text;
    return r;
}

std::vector<ClipRecord> numbered_records(std::size_t n) {
    std::vector<ClipRecord> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(record("clip_" + std::to_string(i) + ".mp4"));
    return out;
}

std::set<std::string> paths_of(const std::vector<ClipRecord>& rs) {
    std::set<std::string> out;
    for (const ClipRecord& r : rs)
        out.insert(r.file_path);
    return out;
}

} // namespace

TEST_CASE("minimal manifest serialization is byte-exact") {
    std::vector<ClipRecord> one{record("a.mp4")};
    CHECK(manifest_to_string(one, ManifestMode::minimal) ==
          "[\n"
          "    {\n"
          "        \"file_path\": \"a.mp4\",\n"
          "        \"text\": \"\"\n"
          "    }\n"
          "]");

    CHECK(manifest_to_string({}, ManifestMode::minimal) == "[]");
}

TEST_CASE("manifest keeps non-ASCII text unescaped") {
    std::vector<ClipRecord> rs{record("a.mp4", "café")};
    std::string out = manifest_to_string(rs, ManifestMode::minimal);
    CHECK(out.find("café") != std::string::npos);
    CHECK(out.find("\\u") == std::string::npos);
}

TEST_CASE("manifest writes are byte-stable") {
    std::vector<ClipRecord> rs = numbered_records(5);
    rs[2].text = "previous scene: a; then next scene: b";
    CHECK(manifest_to_string(rs, ManifestMode::minimal) ==
          manifest_to_string(rs, ManifestMode::minimal));
    CHECK(manifest_to_string(rs, ManifestMode::full) ==
          manifest_to_string(rs, ManifestMode::full));
}

TEST_CASE("manifest round trip preserves records and unknown keys") {
    ClipRecord r = record("clips/x_2-12.mp4", "some prompt");
    r.video_name = "x";
    r.start_time = 2.2;
    r.end_time = 12.2;
    r.duration = 10.0;
    r.transition_frame = 7.2;
    r.category = "sports";
    r.extra["fps"] = 30;

    std::string full = manifest_to_string({r}, ManifestMode::full);
    std::istringstream in(full);
    std::vector<ClipRecord> back = read_manifest(in);
    REQUIRE(back.size() == 1);
    CHECK(back[0].file_path == r.file_path);
    CHECK(back[0].text == r.text);
    CHECK(back[0].video_name == r.video_name);
    CHECK(back[0].start_time == r.start_time);
    CHECK(back[0].end_time == r.end_time);
    CHECK(back[0].duration == r.duration);
    CHECK(*back[0].transition_frame == *r.transition_frame);
    CHECK(*back[0].category == *r.category);
    CHECK(back[0].extra["fps"] == 30);

    // write(read(write(R))) == write(R)
    CHECK(manifest_to_string(back, ManifestMode::full) == full);
}

TEST_CASE("read_manifest reports parse and schema errors") {
    std::istringstream broken("[{\"file_path\": \"a.mp4\"");
    CHECK_THROWS_AS(read_manifest(broken), ParseError);

    std::istringstream missing("[{\"file_path\": \"a.mp4\", \"text\": \"\"}, "
                               "{\"text\": \"orphan\"}]");
    try {
        read_manifest(missing);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.record_index() == 1);
    }
}

TEST_CASE("split produces exact sizes and is deterministic") {
    std::vector<ClipRecord> rs = numbered_records(500);
    SplitSpec spec;
    spec.seed = 42;
    SplitResult a = split(rs, spec);
    CHECK(a.train.size() == 400);
    CHECK(a.val.size() == 50);
    CHECK(a.test.size() == 50);

    SplitResult b = split(rs, spec);
    CHECK(manifest_to_string(a.train, ManifestMode::minimal) ==
          manifest_to_string(b.train, ManifestMode::minimal));
    CHECK(manifest_to_string(a.val, ManifestMode::minimal) ==
          manifest_to_string(b.val, ManifestMode::minimal));
    CHECK(manifest_to_string(a.test, ManifestMode::minimal) ==
          manifest_to_string(b.test, ManifestMode::minimal));

    SplitSpec other;
    other.seed = 43;
    SplitResult c = split(rs, other);
    CHECK(paths_of(a.train) != paths_of(c.train));
}

TEST_CASE("split partitions the input") {
    std::vector<ClipRecord> rs = numbered_records(103);
    SplitSpec spec;
    spec.seed = 7;
    SplitResult parts = split(rs, spec);
    CHECK(parts.train.size() + parts.val.size() + parts.test.size() == 103);

    std::set<std::string> all = paths_of(rs);
    std::set<std::string> seen;
    for (const auto* part : {&parts.train, &parts.val, &parts.test})
        for (const ClipRecord& r : *part) {
            CHECK(seen.insert(r.file_path).second); // disjoint
        }
    CHECK(seen == all);

    // sizes within 1 of ratio*N
    CHECK(std::abs(static_cast<double>(parts.train.size()) - 0.8 * 103) <= 1.0);
    CHECK(std::abs(static_cast<double>(parts.val.size()) - 0.1 * 103) <= 1.0);
    CHECK(std::abs(static_cast<double>(parts.test.size()) - 0.1 * 103) <= 1.0);
}

TEST_CASE("split of 10 records") {
    SplitSpec spec;
    SplitResult parts = split(numbered_records(10), spec);
    CHECK(parts.train.size() == 8);
    CHECK(parts.val.size() == 1);
    CHECK(parts.test.size() == 1);
}

TEST_CASE("split spec validation") {
    SplitSpec bad;
    bad.train = 0.5;
    bad.val = 0.1;
    bad.test = 0.1;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
    SplitSpec neg;
    neg.train = 1.2;
    neg.val = -0.1;
    neg.test = -0.1;
    CHECK_THROWS_AS(neg.validate(), ArgumentError);
}

TEST_CASE("stratified_sample takes exact proportions") {
    std::vector<std::string> categories;
    for (int i = 0; i < 60; ++i)
        categories.push_back("X");
    for (int i = 0; i < 40; ++i)
        categories.push_back("Y");

    std::vector<std::size_t> picked = stratified_sample_indices(categories, 10, 1);
    std::map<std::string, int> counts;
    for (std::size_t i : picked)
        counts[categories[i]]++;
    CHECK(counts["X"] == 6);
    CHECK(counts["Y"] == 4);
    CHECK(std::is_sorted(picked.begin(), picked.end())); // input order kept
}

TEST_CASE("stratified_sample largest-remainder tie goes to the earlier name") {
    std::vector<std::string> categories;
    for (int i = 0; i < 7; ++i)
        categories.push_back("X");
    for (int i = 0; i < 3; ++i)
        categories.push_back("Y");

    // quota rule: 3.5/1.5, one leftover unit, tie on remainder .5 resolved
    // by ascending name -> X
    std::vector<std::size_t> picked = stratified_sample_indices(categories, 5, 9);
    std::map<std::string, int> counts;
    for (std::size_t i : picked)
        counts[categories[i]]++;
    CHECK(counts["X"] == 4);
    CHECK(counts["Y"] == 1);
}

TEST_CASE("stratified_sample is deterministic and bounded by quotas") {
    std::vector<std::string> categories;
    std::mt19937_64 rng(77);
    const char* names[] = {"a", "b", "c", "d"};
    for (int i = 0; i < 200; ++i)
        categories.push_back(names[rng() % 4]);

    std::map<std::string, int> totals;
    for (const std::string& c : categories)
        totals[c]++;

    for (std::size_t n : {0ul, 50ul, 117ul, 200ul}) {
        std::vector<std::size_t> a = stratified_sample_indices(categories, n, 5);
        std::vector<std::size_t> b = stratified_sample_indices(categories, n, 5);
        CHECK(a == b);
        CHECK(a.size() == n);

        std::map<std::string, int> counts;
        for (std::size_t i : a)
            counts[categories[i]]++;
        for (const auto& [name, total] : totals) {
            double quota = static_cast<double>(n) * total / categories.size();
            CHECK(std::abs(counts[name] - quota) < 1.0);
        }
    }
    CHECK_THROWS_AS(stratified_sample_indices(categories, 201, 5), ArgumentError);

    // n == item count is the identity selection
    std::vector<std::size_t> all = stratified_sample_indices(categories, 200, 5);
    for (std::size_t i = 0; i < all.size(); ++i)
        CHECK(all[i] == i);
}

TEST_CASE("stratified_sample on records uses the category field") {
    std::vector<ClipRecord> rs = numbered_records(10);
    for (std::size_t i = 0; i < rs.size(); ++i)
        rs[i].category = i < 6 ? "news" : "sports";
    std::vector<ClipRecord> picked = stratified_sample(rs, 5, 123);
    int news = 0, sports = 0;
    for (const ClipRecord& r : picked)
        (*r.category == "news" ? news : sports)++;
    CHECK(news == 3);
    CHECK(sports == 2);
}
