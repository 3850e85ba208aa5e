#include "effortcast/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

#include "effortcast/rng.hpp"
#include "effortcast/strutil.hpp"

namespace effortcast {

namespace {

const FeatureValue kMissingValue;

std::string cite(std::size_t row, std::size_t col) {
    return "row " + std::to_string(row) + ", column " + std::to_string(col + 1);
}

}  // namespace

FeatureValue FeatureValue::numeric(double value, std::string lexeme) {
    if (!std::isfinite(value)) {
        throw InvalidArgumentError("numeric feature values must be finite");
    }
    FeatureValue v;
    v.kind_ = Kind::Numeric;
    v.number_ = value;
    v.lexeme_ = lexeme.empty() ? format_decimal(value) : std::move(lexeme);
    return v;
}

FeatureValue FeatureValue::categorical(std::string text) {
    std::string trimmed = trim(text);
    if (trimmed.empty()) {
        throw InvalidArgumentError("categorical feature values must be non-empty");
    }
    FeatureValue v;
    v.kind_ = Kind::Categorical;
    v.lexeme_ = std::move(trimmed);
    return v;
}

double FeatureValue::number() const {
    if (kind_ != Kind::Numeric) throw InvalidArgumentError("feature value is not numeric");
    return number_;
}

const std::string& FeatureValue::text() const {
    if (kind_ != Kind::Categorical) throw InvalidArgumentError("feature value is not categorical");
    return lexeme_;
}

const FeatureValue& ProjectRecord::feature(const std::string& name) const {
    const auto it = features.find(name);
    return it == features.end() ? kMissingValue : it->second;
}

std::size_t ProjectRecord::valued_count() const {
    std::size_t n = 0;
    for (const auto& [_, v] : features) {
        if (!v.is_missing()) ++n;
    }
    return n;
}

Provenance Provenance::parse(const std::string& text) {
    const std::string lower = to_lower(trim(text));
    Provenance p;
    p.label = lower.empty() ? "other" : lower;
    if (lower == "isbsg") p.kind = Kind::Isbsg;
    else if (lower == "desharnais") p.kind = Kind::Desharnais;
    else if (lower == "cocomo") p.kind = Kind::Cocomo;
    else if (lower == "synthetic") p.kind = Kind::Synthetic;
    else p.kind = Kind::Other;
    return p;
}

const FeatureSpec* Dataset::find_feature(const std::string& name) const {
    for (const auto& f : schema) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

std::vector<std::string> Dataset::feature_names() const {
    std::vector<std::string> names;
    names.reserve(schema.size());
    for (const auto& f : schema) names.push_back(f.name);
    return names;
}

void SplitSpec::validate() const {
    const auto in_unit = [](double f) { return f >= 0.0 && f <= 1.0; };
    if (!in_unit(train_frac) || !in_unit(val_frac) || !in_unit(test_frac)) {
        throw InvalidArgumentError("split fractions must lie in [0, 1]");
    }
    if (std::abs(train_frac + val_frac + test_frac - 1.0) > 1e-9) {
        throw InvalidArgumentError("split fractions must sum to 1");
    }
    if (pinned) {
        if (!in_unit(pinned->train_frac_within_tier)) {
            throw InvalidArgumentError("pinned train fraction must lie in [0, 1]");
        }
    }
}

// ---------------------------------------------------------------------------
// CSV

std::vector<std::vector<std::string>> read_csv_rows(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;
    char c = 0;

    const auto end_field = [&] {
        row.push_back(field);
        field.clear();
    };
    const auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
        row_started = false;
    };

    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                row_started = true;
                break;
            case ',':
                end_field();
                row_started = true;
                break;
            case '\r':
                break;  // swallowed; LF terminates the row
            case '\n':
                if (row_started || !field.empty() || !row.empty()) end_row();
                break;
            default:
                field += c;
                row_started = true;
                break;
        }
    }
    if (in_quotes) throw MalformedCsvError("unterminated quoted field at end of input");
    if (row_started || !field.empty() || !row.empty()) end_row();
    return rows;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

namespace {

bool is_sentinel(const std::string& cell, const std::vector<std::string>& sentinels) {
    for (const auto& s : sentinels) {
        if (cell == s) return true;
    }
    return false;
}

}  // namespace

LoadResult load_csv(const std::string& path, std::vector<FeatureSpec> schema,
                    const CsvLoadOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open CSV file: " + path);

    const auto rows = read_csv_rows(in);
    if (rows.empty()) throw MalformedCsvError("missing header row in " + path);

    const auto& header = rows.front();
    const auto column_of = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (trim(header[i]) == name) return i;
        }
        return std::nullopt;
    };

    const auto target_col = column_of(options.target_column);
    if (!target_col) {
        throw MalformedCsvError("header of " + path + " lacks target column '" +
                                options.target_column + "'");
    }

    std::optional<std::size_t> id_col;
    if (!options.id_column.empty()) {
        id_col = column_of(options.id_column);
        if (!id_col) {
            throw MalformedCsvError("header of " + path + " lacks id column '" +
                                    options.id_column + "'");
        }
    } else {
        id_col = column_of("_id");
    }

    {
        std::set<std::string> names;
        for (const auto& spec : schema) {
            if (!names.insert(spec.name).second) {
                throw InvalidArgumentError("schema has a duplicate feature name: " + spec.name);
            }
        }
    }

    struct BoundColumn {
        const FeatureSpec* spec;
        std::optional<std::size_t> col;
    };
    std::vector<BoundColumn> bound;
    bound.reserve(schema.size());
    std::vector<std::string> absent;
    for (const auto& spec : schema) {
        const std::string& column = spec.csv_column.empty() ? spec.name : spec.csv_column;
        const auto col = column_of(column);
        if (!col && !options.allow_absent_columns) absent.push_back(column);
        bound.push_back({&spec, col});
    }
    if (!absent.empty()) {
        std::string msg = "header of " + path + " lacks feature column(s):";
        for (const auto& c : absent) msg += " '" + c + "'";
        throw MalformedCsvError(msg);
    }

    LoadResult result;
    result.dataset.schema = std::move(schema);
    result.dataset.provenance = options.provenance;
    result.dataset.target_name = options.target_column;

    std::set<std::string> seen_ids;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        if (cells.size() != header.size()) {
            throw MalformedCsvError("row " + std::to_string(r + 1) + " of " + path + " has " +
                                    std::to_string(cells.size()) + " fields, header has " +
                                    std::to_string(header.size()));
        }

        const std::string target_cell = trim(cells[*target_col]);
        if (is_sentinel(target_cell, options.missing_sentinels)) {
            ++result.rows_dropped_bad_target;
            continue;
        }
        const auto target = parse_double(target_cell);
        if (!target) {
            throw UnparsableNumericError("unparsable target '" + target_cell + "' at " +
                                         cite(r + 1, *target_col) + " of " + path);
        }
        if (*target <= 0.0) {
            ++result.rows_dropped_bad_target;
            continue;
        }

        ProjectRecord record;
        record.target_hours = *target;
        record.id = id_col ? trim(cells[*id_col]) : "row-" + std::to_string(r);
        if (record.id.empty()) record.id = "row-" + std::to_string(r);
        if (!seen_ids.insert(record.id).second) {
            throw MalformedCsvError("duplicate record id '" + record.id + "' in " + path);
        }

        for (const auto& [spec, col] : bound) {
            if (!col) {
                record.features.emplace(spec->name, FeatureValue::missing());
                continue;
            }
            const std::string cell = trim(cells[*col]);
            if (is_sentinel(cell, options.missing_sentinels)) {
                record.features.emplace(spec->name, FeatureValue::missing());
                continue;
            }
            if (spec->kind == FeatureKind::Numeric) {
                const auto value = parse_double(cell);
                if (!value) {
                    throw UnparsableNumericError("unparsable numeric '" + cell + "' at " +
                                                 cite(r + 1, *col) + " of " + path);
                }
                record.features.emplace(spec->name, FeatureValue::numeric(*value, cell));
            } else {
                record.features.emplace(spec->name, FeatureValue::categorical(cell));
            }
        }
        result.dataset.records.push_back(std::move(record));
    }
    return result;
}

LoadResult load_csv(const std::string& path, std::vector<FeatureSpec> schema,
                    const std::string& target_column) {
    CsvLoadOptions options;
    options.target_column = target_column;
    return load_csv(path, std::move(schema), options);
}

void write_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);

    out << "_id";
    for (const auto& spec : ds.schema) {
        out << ',' << csv_escape(spec.csv_column.empty() ? spec.name : spec.csv_column);
    }
    out << ',' << csv_escape(ds.target_name) << '\n';

    for (const auto& record : ds.records) {
        out << csv_escape(record.id);
        for (const auto& spec : ds.schema) {
            const FeatureValue& v = record.feature(spec.name);
            out << ',' << (v.is_missing() ? std::string() : csv_escape(v.lexeme()));
        }
        out << ',' << (record.target_hours ? format_decimal(*record.target_hours) : std::string());
        out << '\n';
    }
    if (!out) throw IoError("failed while writing: " + path);
}

// ---------------------------------------------------------------------------
// Completeness tiers and splits

std::size_t count_missing(const ProjectRecord& record, std::span<const std::string> selected,
                          const std::vector<FeatureSpec>& schema) {
    std::size_t missing = 0;
    for (const auto& name : selected) {
        const bool known = std::any_of(schema.begin(), schema.end(),
                                       [&](const FeatureSpec& f) { return f.name == name; });
        if (!known) throw UnknownFeatureError("unknown feature '" + name + "'");
        if (record.feature(name).is_missing()) ++missing;
    }
    return missing;
}

Dataset stratify_by_completeness(const Dataset& ds, CompletenessTier tier) {
    if (tier.max_missing > ds.schema.size()) {
        throw InvalidArgumentError("tier max_missing exceeds the number of schema features");
    }
    const auto names = ds.feature_names();
    Dataset out;
    out.schema = ds.schema;
    out.provenance = ds.provenance;
    out.target_name = ds.target_name;
    for (const auto& record : ds.records) {
        if (count_missing(record, names, ds.schema) <= tier.max_missing) {
            out.records.push_back(record);
        }
    }
    return out;
}

namespace {

Dataset subset(const Dataset& ds, const std::vector<std::size_t>& indices, std::size_t begin,
               std::size_t end) {
    Dataset out;
    out.schema = ds.schema;
    out.provenance = ds.provenance;
    out.target_name = ds.target_name;
    out.records.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) out.records.push_back(ds.records[indices[i]]);
    return out;
}

}  // namespace

SplitResult split(const Dataset& ds, const SplitSpec& spec) {
    spec.validate();
    if (ds.records.empty()) throw EmptyDatasetError("cannot split an empty dataset");

    const std::size_t n = ds.size();
    const std::size_t n_train = static_cast<std::size_t>(std::floor(spec.train_frac * static_cast<double>(n)));
    const std::size_t n_val = static_cast<std::size_t>(std::floor(spec.val_frac * static_cast<double>(n)));
    const std::size_t n_test = n - n_train - n_val;

    Rng rng(spec.seed);
    SplitResult result;

    if (!spec.pinned) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        rng.shuffle(idx);
        result.train = subset(ds, idx, 0, n_train);
        result.val = subset(ds, idx, n_train, n_train + n_val);
        result.test = subset(ds, idx, n_train + n_val, n);
        return result;
    }

    const auto names = ds.feature_names();
    std::vector<std::size_t> pinned_idx;
    std::vector<std::size_t> rest_idx;
    for (std::size_t i = 0; i < n; ++i) {
        if (count_missing(ds.records[i], names, ds.schema) <= spec.pinned->tier.max_missing) {
            pinned_idx.push_back(i);
        } else {
            rest_idx.push_back(i);
        }
    }

    const std::size_t p = pinned_idx.size();
    const std::size_t p_train = static_cast<std::size_t>(
        std::floor(spec.pinned->train_frac_within_tier * static_cast<double>(p)));
    const std::size_t p_test = p - p_train;
    if (p_train > n_train || p_test > n_test) {
        throw PinnedTierLargerThanSplitError(
            "pinned tier of " + std::to_string(p) + " records allocates " +
            std::to_string(p_train) + " train / " + std::to_string(p_test) +
            " test, which does not fit the global targets of " + std::to_string(n_train) +
            " train / " + std::to_string(n_test) + " test; widen the fractions or shrink the tier");
    }

    rng.shuffle(pinned_idx);
    rng.shuffle(rest_idx);

    const std::size_t r_train = n_train - p_train;
    const std::size_t r_val = n_val;

    std::vector<std::size_t> train_idx(pinned_idx.begin(),
                                       pinned_idx.begin() + static_cast<std::ptrdiff_t>(p_train));
    train_idx.insert(train_idx.end(), rest_idx.begin(),
                     rest_idx.begin() + static_cast<std::ptrdiff_t>(r_train));
    std::vector<std::size_t> val_idx(rest_idx.begin() + static_cast<std::ptrdiff_t>(r_train),
                                     rest_idx.begin() + static_cast<std::ptrdiff_t>(r_train + r_val));
    std::vector<std::size_t> test_idx(pinned_idx.begin() + static_cast<std::ptrdiff_t>(p_train),
                                      pinned_idx.end());
    test_idx.insert(test_idx.end(), rest_idx.begin() + static_cast<std::ptrdiff_t>(r_train + r_val),
                    rest_idx.end());

    result.train = subset(ds, train_idx, 0, train_idx.size());
    result.val = subset(ds, val_idx, 0, val_idx.size());
    result.test = subset(ds, test_idx, 0, test_idx.size());
    return result;
}

// ---------------------------------------------------------------------------
// ISBSG selected-feature schema

std::vector<FeatureSpec> isbsg_schema() {
    return {
        {"architecture", FeatureKind::Categorical, "Architecture is {}", "", "Architecture"},
        {"devs-under-1yr", FeatureKind::Numeric,
         "with {} Number of developers with under 1 year of experiance", " ",
         "Developers Under 1yr"},
        {"devs-1-to-3yr", FeatureKind::Numeric,
         "{} number of developers with 1 to 3 years of experiance", "", "Developers 1to3yr"},
        {"devs-over-3yr", FeatureKind::Numeric,
         "{} Number of developers with over 3 years of experiance", "", "Developers Over 3yr"},
        {"manager-experience-years", FeatureKind::Numeric, "Manager's years of experiance is {}",
         "", "Manager Experience Years"},
        {"application-group", FeatureKind::Categorical, "{} Application Group", "",
         "Application Group"},
        {"application-type", FeatureKind::Categorical, "{} Application Type", "",
         "Application Type"},
        {"primary-programming-language", FeatureKind::Categorical,
         "Primary Programming Language is {}", "", "Primary Programming Language"},
        {"max-team-size", FeatureKind::Numeric, "Max Team Size of {}", "", "Max Team Size"},
        {"development-methodology", FeatureKind::Categorical, "Development Methodologies is {}",
         "", "Development Methodologies"},
    };
}

}  // namespace effortcast
