#pragma once

#include <map>
#include <string>
#include <vector>

namespace fracfisher {

/// One checked inequality or identity inside an experiment run.
struct ContractResult {
    std::string name;
    bool passed = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
};

/// Machine-readable experiment outcome: scalar results, contract verdicts and
/// named CSV traces. Serialization is deterministic (sorted keys, fixed float
/// formatting); timestamps never enter the report.
struct RunReport {
    std::string command;
    std::map<std::string, double> numbers;
    std::map<std::string, std::string> strings;
    std::vector<ContractResult> contracts;

    bool all_passed() const;
    std::string to_json() const;
};

/// Writes content to path atomically (temporary file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// Fixed, locale-independent float formatting used by every serializer
/// (shortest representation that round-trips).
std::string format_double(double v);

}  // namespace fracfisher
