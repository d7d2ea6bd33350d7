#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pdm/merge_tree.hpp"
#include "pdm/paradigm.hpp"

namespace pdm {

struct Record {
    std::string id;
    std::map<std::string, std::optional<std::string>> attributes;
};

/// Records grouped by the id string they were aligned under. An id may carry
/// several records.
class RecordTable {
public:
    void add(Record r);
    const std::vector<Record>* find(const std::string& id) const;
    /// Attribute names in first-seen order.
    const std::vector<std::string>& attribute_names() const { return attributes_; }
    std::size_t record_count() const { return count_; }
    /// Records with a non-null value for `attribute`.
    std::size_t non_null_count(const std::string& attribute) const;

private:
    std::unordered_map<std::string, std::vector<Record>> by_id_;
    std::vector<std::string> attributes_;
    std::size_t count_ = 0;
};

/// ⟨aligned glyph, attribute value⟩ claimed by one record.
struct Claim {
    Glyph key;
    std::string value;
};

/// One claim per record under a row of `p` whose `attribute` is not null.
/// `column` is 1-based. Throws if a row id has no record.
std::vector<Claim> build_claims(const Paradigm& p, std::size_t column, const std::string& attribute,
                                const RecordTable& records);

/// Σ over keys of the key's most frequent value count.
std::size_t support(std::span<const Claim> claims);
/// support / |claims|; 0 for no claims.
double confidence(std::span<const Claim> claims);
std::size_t diversity(std::span<const Claim> claims);
/// Largest per-key majority count.
std::size_t inner_support(std::span<const Claim> claims);

struct Measures {
    std::size_t support = 0;
    double confidence = 0.0;
    std::size_t diversity = 0;
    std::size_t inner_support = 0;
    std::size_t claims = 0;
};

Measures measure(std::span<const Claim> claims);

struct Thresholds {
    std::size_t support_min = 10;
    double confidence_min = 0.9;
    std::size_t diversity_min = 5;
    std::size_t inner_support_min = 5;
};

enum class ConfidenceScope {
    Claims,   // records under the paradigm with a value for the attribute
    Dataset,  // every record in the table with a value for the attribute
};

struct DiscoveryOptions {
    Thresholds thresholds;
    /// Skip a cell when both child columns it was merged from were rejected
    /// for confidence.
    bool prune_low_confidence_children = true;
    /// Evaluate the skipped cells anyway and report the ones that would
    /// have passed the confidence threshold.
    bool validate_pruning = false;
    ConfidenceScope scope = ConfidenceScope::Claims;
    bool null_keys = true;
    /// Attributes to test; empty means every attribute in the table.
    std::vector<std::string> attributes;
};

struct Dependency {
    ParadigmId node = 0;
    std::size_t column = 0;  // 1-based
    std::string attribute;
    std::size_t support = 0;
    double confidence = 0.0;
    std::size_t diversity = 0;
    std::size_t inner_support = 0;
    std::string pattern;  // compact pattern with the column marked
};

struct PruneFinding {
    ParadigmId node = 0;
    std::size_t column = 0;
    std::string attribute;
    Measures measures;
};

struct DiscoveryReport {
    std::vector<Dependency> rules;  // by node, column, attribute
    std::vector<PruneFinding> findings;
    std::size_t nodes_skipped_by_cardinality = 0;
    std::size_t cells_evaluated = 0;
    std::size_t cells_skipped_by_children = 0;
};

DiscoveryReport discover(const MergeTree& tree, const RecordTable& records, const DistanceTable& d,
                         const DiscoveryOptions& options);

/// "pattern → attribute  support=… confidence=… diversity=… inner_support=…"
std::string render_rule(const Dependency& dep);
std::string rule_json(const Dependency& dep);

}  // namespace pdm
