#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ocam::ingest {

struct IngestDiagnostics {
    std::int64_t records_read = 0;
    std::int64_t records_rejected = 0;
    std::int64_t unknown_identities = 0;
    std::vector<std::string> warnings;

    void warn(std::string message) { warnings.push_back(std::move(message)); }

    void reject(std::string message) {
        ++records_rejected;
        warnings.push_back(std::move(message));
    }

    void merge(const IngestDiagnostics& other) {
        records_read += other.records_read;
        records_rejected += other.records_rejected;
        unknown_identities += other.unknown_identities;
        warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
    }
};

}  // namespace ocam::ingest
