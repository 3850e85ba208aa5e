#include "effortcast/promptgen.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "effortcast/strutil.hpp"

namespace effortcast {

PromptTemplate prompt_template_from_schema(const std::vector<FeatureSpec>& schema) {
    PromptTemplate tmpl;
    for (const auto& spec : schema) {
        std::string clause = spec.clause_template.empty() ? spec.name + " is {}"
                                                          : spec.clause_template;
        tmpl.clauses.push_back({spec.name, std::move(clause), spec.clause_joiner});
    }
    return tmpl;
}

PromptTemplate isbsg_prompt_template() { return prompt_template_from_schema(isbsg_schema()); }

std::string format_hours(double hours) { return format_decimal(hours); }

namespace {

std::string expand_clause(const PromptClause& clause, const std::string& value) {
    const auto slot = clause.text.find("{}");
    if (slot == std::string::npos) return clause.text;
    std::string out = clause.text;
    out.replace(slot, 2, value);
    return out;
}

}  // namespace

std::string render_prompt(const ProjectRecord& record, const PromptTemplate& tmpl) {
    std::string out = tmpl.preamble;
    bool first = true;
    for (const auto& clause : tmpl.clauses) {
        const FeatureValue& value = record.feature(clause.feature);
        if (value.is_missing() && tmpl.missing_text.empty()) continue;
        if (!first) out += clause.joiner.empty() ? tmpl.separator : clause.joiner;
        out += expand_clause(clause, value.is_missing() ? tmpl.missing_text : value.lexeme());
        first = false;
    }
    return out;
}

std::string render_completion(const ProjectRecord& record, const PromptTemplate& tmpl) {
    if (!record.target_hours) {
        throw MissingTargetError("record '" + record.id + "' has no target hours");
    }
    return tmpl.completion_prefix + format_hours(*record.target_hours) + tmpl.completion_suffix;
}

PromptRecord render_record(const ProjectRecord& record, const PromptTemplate& tmpl) {
    return {render_prompt(record, tmpl), render_completion(record, tmpl), record.id};
}

std::size_t emit_corpus(const Dataset& ds, const PromptTemplate& tmpl, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);

    std::size_t written = 0;
    for (const auto& record : ds.records) {
        const PromptRecord pr = render_record(record, tmpl);
        nlohmann::ordered_json line;
        line["prompt"] = pr.prompt;
        line["completion"] = pr.completion + tmpl.corpus_suffix;
        out << line.dump() << '\n';
        ++written;
    }
    if (!out) throw IoError("failed while writing: " + path);
    return written;
}

std::size_t validate_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus: " + path);

    std::size_t count = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() && in.peek() == EOF) break;  // trailing newline
        const auto fail = [&](const std::string& why) {
            throw InvalidArgumentError("corpus line " + std::to_string(line_no) + ": " + why);
        };
        nlohmann::json parsed = nlohmann::json::parse(line, nullptr, false);
        if (parsed.is_discarded()) fail("not valid JSON");
        if (!parsed.is_object()) fail("not a JSON object");
        if (parsed.size() != 2 || !parsed.contains("prompt") || !parsed.contains("completion")) {
            fail("must contain exactly the keys \"prompt\" and \"completion\"");
        }
        if (!parsed["prompt"].is_string() || !parsed["completion"].is_string()) {
            fail("\"prompt\" and \"completion\" must be strings");
        }
        ++count;
    }
    return count;
}

double parse_completion(std::string_view text) {
    static constexpr std::string_view kPhrase = "estimated cost is";
    const auto at = ifind(text, kPhrase);
    if (at == std::string_view::npos) {
        throw UnparsableCompletionError("completion lacks the 'Estimated cost is' phrase");
    }
    std::size_t pos = at + kPhrase.size();
    if (pos < text.size() && text[pos] == ':') ++pos;

    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (!(c == '-' || c == '+' || c == '.' || (c >= '0' && c <= '9'))) continue;
        double value = 0.0;
        const char* first = text.data() + pos;
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
        if (ec == std::errc{} && ptr != first && std::isfinite(value)) return value;
    }
    throw UnparsableCompletionError("no number found after 'Estimated cost is'");
}

}  // namespace effortcast
