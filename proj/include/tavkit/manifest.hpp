#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tavkit/errors.hpp"

namespace tavkit {

// One clip row of the dataset manifest. `extra` keeps any manifest keys this
// toolkit does not model, so foreign manifests survive a full-mode round trip.
struct ClipRecord {
    std::string file_path;
    std::string text;
    std::string video_name;
    double start_time = 0.0;
    double end_time = 0.0;
    double duration = 0.0;
    std::optional<double> transition_frame; // seconds of the detected cut
    std::optional<std::string> category;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

enum class ManifestMode {
    minimal, // exactly {"file_path", "text"} per record
    full,    // every known key plus preserved extras
};

void write_manifest(const std::vector<ClipRecord>& records, std::ostream& sink,
                    ManifestMode mode);
std::string manifest_to_string(const std::vector<ClipRecord>& records,
                               ManifestMode mode);
void write_manifest_file(const std::vector<ClipRecord>& records,
                         const std::string& path, ManifestMode mode);

std::vector<ClipRecord> read_manifest(std::istream& source);
std::vector<ClipRecord> read_manifest_file(const std::string& path);

struct SplitSpec {
    double train = 0.8;
    double val = 0.1;
    double test = 0.1;
    std::uint64_t seed = 0;

    void validate() const; // ratios must be nonnegative and sum to 1
};

struct SplitResult {
    std::vector<ClipRecord> train;
    std::vector<ClipRecord> val;
    std::vector<ClipRecord> test;
};

// Seeded shuffle, then a contiguous partition at floor(ratio*N) boundaries
// with the remainder handed out train-first.
SplitResult split(const std::vector<ClipRecord>& records, const SplitSpec& spec);

// Proportional per-category quotas with largest-remainder rounding (ties by
// ascending category name); within a category a seeded shuffle picks the
// members. The result keeps the input order.
std::vector<std::size_t> stratified_sample_indices(
    const std::vector<std::string>& categories, std::size_t n, std::uint64_t seed);
std::vector<ClipRecord> stratified_sample(const std::vector<ClipRecord>& items,
                                          std::size_t n, std::uint64_t seed);

} // namespace tavkit
