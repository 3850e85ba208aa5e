#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "effortcast/dataset.hpp"

namespace effortcast {

struct PromptClause {
    std::string feature;
    std::string text;    // contains one "{}" value slot
    std::string joiner;  // glue to a non-empty prefix; empty = template separator
};

struct PromptTemplate {
    std::string preamble =
        "What is the estimated cost of hours of a Project with the description: ";
    std::vector<PromptClause> clauses;
    std::string separator = ", ";
    std::string completion_prefix = "Estimated cost is: ";
    std::string completion_suffix = " hours";
    /// Optional stop-sequence appended to completions in emitted corpora only.
    std::string corpus_suffix;
    /// When empty (default), Missing features are omitted from the prompt
    /// entirely; otherwise their clause renders with this placeholder text.
    std::string missing_text;
};

struct PromptRecord {
    std::string prompt;
    std::string completion;
    std::string source_id;
};

/// Clauses in schema order, built from each feature's clause template.
PromptTemplate prompt_template_from_schema(const std::vector<FeatureSpec>& schema);

/// The paper-order ISBSG template (= prompt_template_from_schema(isbsg_schema())).
PromptTemplate isbsg_prompt_template();

/// Preamble plus one clause per non-Missing feature in template order.
/// Missing features contribute nothing; a record with every feature Missing
/// yields the preamble alone.
std::string render_prompt(const ProjectRecord& record, const PromptTemplate& tmpl);

/// "Estimated cost is: <hours> hours"; throws MissingTargetError.
std::string render_completion(const ProjectRecord& record, const PromptTemplate& tmpl);

PromptRecord render_record(const ProjectRecord& record, const PromptTemplate& tmpl);

/// Whole numbers keep one decimal ("1112.0"), others full precision.
std::string format_hours(double hours);

/// Writes one {"prompt": ..., "completion": ...} JSON object per record, in
/// dataset order, LF-terminated. Returns the number of lines written.
std::size_t emit_corpus(const Dataset& ds, const PromptTemplate& tmpl, const std::string& path);

/// Checks a JSONL corpus line by line (object with exactly the keys "prompt"
/// and "completion", both strings). Returns the line count; throws
/// InvalidArgumentError citing the first offending line.
std::size_t validate_corpus(const std::string& path);

/// Extracts the first real number following "estimated cost is" (case
/// insensitive, optional colon, tolerant of extra words and a missing
/// "hours" suffix). Exact inverse of render_completion on its own output.
/// Throws UnparsableCompletionError when no number is found.
double parse_completion(std::string_view text);

}  // namespace effortcast
