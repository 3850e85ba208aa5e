#include <doctest.h>

#include <sstream>

#include "effortcast/config.hpp"
#include "test_util.hpp"

using namespace effortcast;

TEST_CASE("config parsing: sections, quoting, comments") {
    std::istringstream in(
        "# comment\n"
        "top = 1\n"
        "[dataset]\n"
        "target_column = Normalized Work Effort\n"
        "; another comment\n"
        "[template]\n"
        "preamble = \"ends with space \"\n"
        "joinerish = \" \"\n");
    const Config config = Config::parse(in);
    CHECK(config.get_or("top", "") == "1");
    CHECK(config.get_or("dataset.target_column", "") == "Normalized Work Effort");
    CHECK(config.get_or("template.preamble", "") == "ends with space ");
    CHECK(config.get_or("template.joinerish", "") == " ");
    CHECK(!config.get("missing").has_value());

    std::istringstream bad("novalue\n");
    CHECK_THROWS_AS(Config::parse(bad), ConfigError);
    std::istringstream badsec("[open\n");
    CHECK_THROWS_AS(Config::parse(badsec), ConfigError);
}

TEST_CASE("config digests are deterministic and value-sensitive") {
    std::istringstream a("x = 1\ny = 2\n");
    std::istringstream b("y = 2\nx = 1\n");
    std::istringstream c("x = 1\ny = 3\n");
    const std::string da = Config::parse(a).digest();
    const std::string db = Config::parse(b).digest();
    const std::string dc = Config::parse(c).digest();
    CHECK(da == db);  // canonical ordering
    CHECK(da != dc);
}

TEST_CASE("the shipped ISBSG schema config reproduces the built-in schema") {
    const Config config = Config::load(testutil::source_path("data/isbsg_schema.conf"));
    const auto from_file = schema_from_config(config);
    const auto built_in = isbsg_schema();

    REQUIRE(from_file.size() == built_in.size());
    for (std::size_t i = 0; i < built_in.size(); ++i) {
        CAPTURE(built_in[i].name);
        CHECK(from_file[i].name == built_in[i].name);
        CHECK(from_file[i].kind == built_in[i].kind);
        CHECK(from_file[i].csv_column == built_in[i].csv_column);
        CHECK(from_file[i].clause_template == built_in[i].clause_template);
        CHECK(from_file[i].clause_joiner == built_in[i].clause_joiner);
    }

    const PromptTemplate tmpl = template_from_config(config, from_file);
    const PromptTemplate built_in_tmpl = isbsg_prompt_template();
    CHECK(tmpl.preamble == built_in_tmpl.preamble);
    CHECK(tmpl.separator == built_in_tmpl.separator);
    CHECK(tmpl.completion_prefix == built_in_tmpl.completion_prefix);
    CHECK(tmpl.completion_suffix == built_in_tmpl.completion_suffix);

    const auto options = load_options_from_config(config);
    CHECK(options.target_column == "Normalized Work Effort");
    CHECK(options.provenance.str() == "isbsg");
}

TEST_CASE("without a [schema] section the built-in ISBSG schema applies") {
    std::istringstream in("[dataset]\ntarget_column = t\n");
    const Config config = Config::parse(in);
    CHECK(schema_from_config(config).size() == 10);
}

TEST_CASE("split and provider and hyperparams from config") {
    std::istringstream in(
        "[split]\n"
        "train = 0.5\n"
        "val = 0\n"
        "test = 0.5\n"
        "seed = 9\n"
        "pin_max_missing = 3\n"
        "pin_train_frac = 0.5\n"
        "[provider]\n"
        "base_url = http://localhost:9999\n"
        "model = my-model\n"
        "max_attempts = 5\n"
        "[hyperparams]\n"
        "seed = 13\n"
        "[hyperparams.knn]\n"
        "k = 9\n"
        "[hyperparams.elm]\n"
        "activation = tanh\n");
    const Config config = Config::parse(in);

    const SplitSpec spec = split_from_config(config);
    CHECK(spec.train_frac == 0.5);
    CHECK(spec.seed == 9);
    REQUIRE(spec.pinned.has_value());
    CHECK(spec.pinned->tier.max_missing == 3);
    CHECK(spec.pinned->train_frac_within_tier == 0.5);

    const ProviderConfig provider = provider_from_config(config);
    CHECK(provider.base_url == "http://localhost:9999");
    CHECK(provider.model_name == "my-model");
    CHECK(provider.retry.max_attempts == 5);
    CHECK(provider.temperature == 0.0);

    const auto params = hyperparams_from_config(config, baselines::EstimatorKind::Knn);
    CHECK(params.knn_k == 9);
    CHECK(params.seed == 13);
    CHECK(params.elm_activation == baselines::Activation::Tanh);

    std::istringstream bad("[hyperparams.elm]\nactivation = cubic\n");
    CHECK_THROWS_AS(hyperparams_from_config(Config::parse(bad), baselines::EstimatorKind::Elm),
                    ConfigError);
}
