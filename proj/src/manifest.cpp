#include "tavkit/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace tavkit {
namespace {

using ordered_json = nlohmann::ordered_json;

const char* const kKnownKeys[] = {"file_path", "text",     "video_name",
                                  "start_time", "end_time", "duration",
                                  "transition_frame", "category"};

bool is_known_key(const std::string& key) {
    for (const char* k : kKnownKeys)
        if (key == k)
            return true;
    return false;
}

ordered_json record_to_json(const ClipRecord& r, ManifestMode mode) {
    ordered_json j = ordered_json::object();
    j["file_path"] = r.file_path;
    j["text"] = r.text;
    if (mode == ManifestMode::minimal)
        return j;
    j["video_name"] = r.video_name;
    j["start_time"] = r.start_time;
    j["end_time"] = r.end_time;
    j["duration"] = r.duration;
    if (r.transition_frame)
        j["transition_frame"] = *r.transition_frame;
    if (r.category)
        j["category"] = *r.category;
    for (const auto& [key, value] : r.extra.items())
        j[key] = value;
    return j;
}

ClipRecord record_from_json(const ordered_json& j, std::size_t index) {
    if (!j.is_object())
        throw SchemaError("manifest record " + std::to_string(index) +
                          " is not an object", index);
    if (!j.contains("file_path") || !j["file_path"].is_string())
        throw SchemaError("manifest record " + std::to_string(index) +
                          " is missing \"file_path\"", index);
    ClipRecord r;
    r.file_path = j["file_path"].get<std::string>();
    if (j.contains("text") && j["text"].is_string())
        r.text = j["text"].get<std::string>();
    if (j.contains("video_name") && j["video_name"].is_string())
        r.video_name = j["video_name"].get<std::string>();
    if (j.contains("start_time") && j["start_time"].is_number())
        r.start_time = j["start_time"].get<double>();
    if (j.contains("end_time") && j["end_time"].is_number())
        r.end_time = j["end_time"].get<double>();
    if (j.contains("duration") && j["duration"].is_number())
        r.duration = j["duration"].get<double>();
    if (j.contains("transition_frame") && j["transition_frame"].is_number())
        r.transition_frame = j["transition_frame"].get<double>();
    if (j.contains("category") && j["category"].is_string())
        r.category = j["category"].get<std::string>();
    for (const auto& [key, value] : j.items())
        if (!is_known_key(key))
            r.extra[key] = value;
    return r;
}

// Deterministic across platforms, unlike std::shuffle.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace

void write_manifest(const std::vector<ClipRecord>& records, std::ostream& sink,
                    ManifestMode mode) {
    ordered_json arr = ordered_json::array();
    for (const ClipRecord& r : records)
        arr.push_back(record_to_json(r, mode));
    // 4-space indentation, non-ASCII emitted verbatim
    sink << arr.dump(4);
    if (!sink)
        throw IoError("manifest write failed");
}

std::string manifest_to_string(const std::vector<ClipRecord>& records,
                               ManifestMode mode) {
    std::ostringstream os;
    write_manifest(records, os, mode);
    return os.str();
}

void write_manifest_file(const std::vector<ClipRecord>& records,
                         const std::string& path, ManifestMode mode) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open file for writing: " + path);
    write_manifest(records, out, mode);
}

std::vector<ClipRecord> read_manifest(std::istream& source) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(source);
    } catch (const nlohmann::json::parse_error& e) {
        // nlohmann reports 1-based byte positions
        throw ParseError(e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    if (!doc.is_array())
        throw SchemaError("manifest root is not an array", 0);
    std::vector<ClipRecord> records;
    records.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i)
        records.push_back(record_from_json(doc[i], i));
    return records;
}

std::vector<ClipRecord> read_manifest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open file: " + path);
    return read_manifest(in);
}

void SplitSpec::validate() const {
    if (train < 0 || val < 0 || test < 0)
        throw ArgumentError("split ratios must be nonnegative");
    if (std::abs(train + val + test - 1.0) > 1e-9)
        throw ArgumentError("split ratios must sum to 1");
}

SplitResult split(const std::vector<ClipRecord>& records, const SplitSpec& spec) {
    spec.validate();
    std::vector<std::size_t> order(records.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::mt19937_64 rng(spec.seed);
    seeded_shuffle(order, rng);

    const std::size_t n = records.size();
    std::size_t sizes[3] = {
        static_cast<std::size_t>(std::floor(spec.train * n)),
        static_cast<std::size_t>(std::floor(spec.val * n)),
        static_cast<std::size_t>(std::floor(spec.test * n)),
    };
    std::size_t leftover = n - sizes[0] - sizes[1] - sizes[2];
    for (std::size_t i = 0; leftover > 0; i = (i + 1) % 3, --leftover)
        ++sizes[i];

    SplitResult out;
    std::size_t pos = 0;
    for (std::size_t part = 0; part < 3; ++part) {
        std::vector<ClipRecord>& dst =
            part == 0 ? out.train : (part == 1 ? out.val : out.test);
        dst.reserve(sizes[part]);
        for (std::size_t i = 0; i < sizes[part]; ++i)
            dst.push_back(records[order[pos++]]);
    }
    return out;
}

std::vector<std::size_t> stratified_sample_indices(
    const std::vector<std::string>& categories, std::size_t n, std::uint64_t seed) {
    if (n > categories.size())
        throw ArgumentError("sample size " + std::to_string(n) +
                            " exceeds item count " +
                            std::to_string(categories.size()));

    // map iteration gives ascending category name, which fixes tie order
    std::map<std::string, std::vector<std::size_t>> by_category;
    for (std::size_t i = 0; i < categories.size(); ++i)
        by_category[categories[i]].push_back(i);

    const std::size_t total = categories.size();
    struct Quota {
        const std::string* name;
        std::vector<std::size_t>* members;
        std::size_t base;
        std::size_t remainder; // of n*count/total, scaled by total
    };
    std::vector<Quota> quotas;
    std::size_t assigned = 0;
    for (auto& [name, members] : by_category) {
        std::size_t product = n * members.size();
        Quota q{&name, &members, product / total, product % total};
        assigned += q.base;
        quotas.push_back(q);
    }
    std::vector<std::size_t> order(quotas.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return quotas[a].remainder > quotas[b].remainder;
    });
    for (std::size_t k = 0; assigned < n; ++k)
        ++quotas[order[k]].base, ++assigned;

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> selected;
    selected.reserve(n);
    for (Quota& q : quotas) {
        std::vector<std::size_t> pool = *q.members;
        seeded_shuffle(pool, rng);
        selected.insert(selected.end(), pool.begin(), pool.begin() + q.base);
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

std::vector<ClipRecord> stratified_sample(const std::vector<ClipRecord>& items,
                                          std::size_t n, std::uint64_t seed) {
    std::vector<std::string> categories;
    categories.reserve(items.size());
    for (const ClipRecord& r : items)
        categories.push_back(r.category.value_or(""));
    std::vector<ClipRecord> out;
    out.reserve(n);
    for (std::size_t i : stratified_sample_indices(categories, n, seed))
        out.push_back(items[i]);
    return out;
}

} // namespace tavkit
