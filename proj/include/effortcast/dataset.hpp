#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "effortcast/errors.hpp"

namespace effortcast {

enum class FeatureKind { Numeric, Categorical };

/// One cell of a project record: a finite number (keeping its source
/// spelling, so "0" and "3.0" render back exactly), a category label, or an
/// explicit blank.
class FeatureValue {
  public:
    enum class Kind { Missing, Numeric, Categorical };

    FeatureValue() = default;  // Missing

    static FeatureValue missing() { return FeatureValue(); }
    /// Throws InvalidArgumentError on non-finite values. An empty lexeme is
    /// filled with the canonical decimal rendering.
    static FeatureValue numeric(double value, std::string lexeme = {});
    /// Throws InvalidArgumentError when the trimmed text is empty.
    static FeatureValue categorical(std::string text);

    Kind kind() const { return kind_; }
    bool is_missing() const { return kind_ == Kind::Missing; }
    double number() const;
    const std::string& text() const;
    /// Rendering form: the numeric source spelling or the category label.
    const std::string& lexeme() const { return lexeme_; }

    bool operator==(const FeatureValue&) const = default;

  private:
    Kind kind_ = Kind::Missing;
    double number_ = 0.0;
    std::string lexeme_;
};

struct FeatureSpec {
    std::string name;
    FeatureKind kind = FeatureKind::Numeric;
    std::string clause_template;  // prompt clause with one "{}" value slot
    std::string clause_joiner;    // override for the clause separator; empty = default
    std::string csv_column;       // source column; empty = same as name
};

struct ProjectRecord {
    std::string id;
    std::map<std::string, FeatureValue> features;
    std::optional<double> target_hours;

    /// Lookup that treats absent features as Missing.
    const FeatureValue& feature(const std::string& name) const;
    std::size_t valued_count() const;
};

struct Provenance {
    enum class Kind { Isbsg, Desharnais, Cocomo, Synthetic, Other };
    Kind kind = Kind::Other;
    std::string label = "other";

    static Provenance parse(const std::string& text);
    const std::string& str() const { return label; }
    bool operator==(const Provenance&) const = default;
};

struct Dataset {
    std::vector<FeatureSpec> schema;
    std::vector<ProjectRecord> records;
    Provenance provenance;
    std::string target_name = "target";

    std::size_t size() const { return records.size(); }
    const FeatureSpec* find_feature(const std::string& name) const;
    std::vector<std::string> feature_names() const;
};

/// Maximum number of Missing cells among the schema features a record may
/// carry and still belong to the tier.
struct CompletenessTier {
    std::size_t max_missing = 0;
};

struct PinnedSplit {
    CompletenessTier tier;
    double train_frac_within_tier = 0.5;
};

struct SplitSpec {
    double train_frac = 0.8;
    double val_frac = 0.1;
    double test_frac = 0.1;
    std::uint64_t seed = 42;
    std::optional<PinnedSplit> pinned;

    /// Fractions must lie in [0,1] and sum to 1 within 1e-9.
    void validate() const;
};

struct SplitResult {
    Dataset train;
    Dataset val;
    Dataset test;
};

struct CsvLoadOptions {
    std::string target_column = "target";
    /// Cell spellings treated as Missing (matched after trimming).
    std::vector<std::string> missing_sentinels = {"", "NA", "N/A"};
    /// Column holding record ids; empty = use "_id" when present, else
    /// synthesize "row-<n>".
    std::string id_column;
    /// Accept schema features whose column is absent from the header
    /// (they load as Missing everywhere).
    bool allow_absent_columns = false;
    Provenance provenance;
};

struct LoadResult {
    Dataset dataset;
    /// Rows dropped because the target cell was missing or non-positive.
    std::size_t rows_dropped_bad_target = 0;
};

LoadResult load_csv(const std::string& path, std::vector<FeatureSpec> schema,
                    const CsvLoadOptions& options);
LoadResult load_csv(const std::string& path, std::vector<FeatureSpec> schema,
                    const std::string& target_column);

/// Canonical re-emission: _id, schema columns (source spellings), target.
/// Reload with the same schema reproduces the dataset byte-for-byte.
void write_csv(const Dataset& ds, const std::string& path);

std::size_t count_missing(const ProjectRecord& record, std::span<const std::string> selected,
                          const std::vector<FeatureSpec>& schema);

/// Order-preserving subset of records with count_missing <= tier.max_missing
/// over the full schema.
Dataset stratify_by_completeness(const Dataset& ds, CompletenessTier tier);

/// Seeded three-way partition. When `pinned` is set, tier records are split
/// train/test by train_frac_within_tier first (none to validation) and the
/// remaining records fill the global fractions.
SplitResult split(const Dataset& ds, const SplitSpec& spec);

/// The ten selected ISBSG features with their prompt clause templates, in
/// prompt order.
std::vector<FeatureSpec> isbsg_schema();

// RFC-4180 helpers shared by the report writers.
std::vector<std::vector<std::string>> read_csv_rows(std::istream& in);
std::string csv_escape(const std::string& field);

}  // namespace effortcast
