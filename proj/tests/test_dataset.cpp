#include <doctest.h>

#include <algorithm>
#include <set>

#include "effortcast/dataset.hpp"
#include "test_util.hpp"

using namespace effortcast;
using testutil::TempDir;

namespace {

std::vector<std::string> ids_of(const Dataset& ds) {
    std::vector<std::string> ids;
    for (const auto& r : ds.records) ids.push_back(r.id);
    return ids;
}

}  // namespace

TEST_CASE("bundled fixtures keep the published dataset sizes") {
    const auto desharnais = load_csv(testutil::source_path("data/desharnais.csv"),
                                     {{"PointsAjust", FeatureKind::Numeric, "", "", ""}}, "Effort");
    CHECK(desharnais.dataset.size() == 81);

    const auto cocomo = load_csv(testutil::source_path("data/cocomo.csv"),
                                 {{"loc", FeatureKind::Numeric, "", "", ""}}, "actual");
    CHECK(cocomo.dataset.size() == 93);
}

TEST_CASE("load_csv maps blanks and sentinels to Missing") {
    TempDir dir;
    const std::string path = dir.file("fixture.csv");
    testutil::write_file(path,
                         "a,b,c,target\n"
                         "1.5,,x,10\n"
                         "NA,2.5,N/A,20\n"
                         "3,4,z,30\n");

    std::vector<FeatureSpec> schema = {
        {"a", FeatureKind::Numeric, "", "", ""},
        {"b", FeatureKind::Numeric, "", "", ""},
        {"c", FeatureKind::Categorical, "", "", ""},
    };
    const auto loaded = load_csv(path, schema, "target");
    REQUIRE(loaded.dataset.size() == 3);

    const auto& r0 = loaded.dataset.records[0];
    CHECK(r0.feature("a").number() == 1.5);
    CHECK(r0.feature("b").is_missing());
    CHECK(r0.feature("c").text() == "x");

    const auto& r1 = loaded.dataset.records[1];
    CHECK(r1.feature("a").is_missing());
    CHECK(r1.feature("b").number() == 2.5);
    CHECK(r1.feature("c").is_missing());

    // Source spellings survive: "3" stays "3", not "3.0".
    CHECK(loaded.dataset.records[2].feature("a").lexeme() == "3");
    CHECK(loaded.dataset.records[2].target_hours == 30.0);

    // Planted blank counts come back exactly through count_missing.
    const std::vector<std::string> names = {"a", "b", "c"};
    CHECK(count_missing(loaded.dataset.records[0], names, loaded.dataset.schema) == 1);
    CHECK(count_missing(loaded.dataset.records[1], names, loaded.dataset.schema) == 2);
    CHECK(count_missing(loaded.dataset.records[2], names, loaded.dataset.schema) == 0);
}

TEST_CASE("load_csv handles a header-only file") {
    TempDir dir;
    const std::string path = dir.file("empty.csv");
    testutil::write_file(path, "a,target\n");
    const auto loaded = load_csv(path, {{"a", FeatureKind::Numeric, "", "", ""}}, "target");
    CHECK(loaded.dataset.size() == 0);
    CHECK(loaded.rows_dropped_bad_target == 0);
}

TEST_CASE("load_csv drops rows with missing or non-positive targets, counted") {
    TempDir dir;
    const std::string path = dir.file("targets.csv");
    testutil::write_file(path,
                         "a,target\n"
                         "1,100\n"
                         "2,\n"
                         "3,NA\n"
                         "4,-5\n"
                         "5,200\n");
    const auto loaded = load_csv(path, {{"a", FeatureKind::Numeric, "", "", ""}}, "target");
    CHECK(loaded.dataset.size() == 2);
    CHECK(loaded.rows_dropped_bad_target == 3);
}

TEST_CASE("load_csv error paths") {
    TempDir dir;
    std::vector<FeatureSpec> schema = {{"a", FeatureKind::Numeric, "", "", ""}};

    SUBCASE("row arity mismatch") {
        const std::string path = dir.file("arity.csv");
        testutil::write_file(path, "a,target\n1,2,3\n");
        CHECK_THROWS_AS(load_csv(path, schema, "target"), MalformedCsvError);
    }
    SUBCASE("unparsable numeric cites row and column") {
        const std::string path = dir.file("bad_numeric.csv");
        testutil::write_file(path, "a,target\nnot-a-number,10\n");
        CHECK_THROWS_WITH_AS(load_csv(path, schema, "target"),
                             doctest::Contains("row 2"), UnparsableNumericError);
    }
    SUBCASE("missing target column") {
        const std::string path = dir.file("no_target.csv");
        testutil::write_file(path, "a,b\n1,2\n");
        CHECK_THROWS_AS(load_csv(path, schema, "target"), MalformedCsvError);
    }
    SUBCASE("missing feature column") {
        const std::string path = dir.file("no_feature.csv");
        testutil::write_file(path, "b,target\n1,2\n");
        CHECK_THROWS_AS(load_csv(path, schema, "target"), MalformedCsvError);
    }
    SUBCASE("absent feature columns allowed on request") {
        const std::string path = dir.file("no_feature_ok.csv");
        testutil::write_file(path, "b,target\n1,2\n");
        CsvLoadOptions options;
        options.target_column = "target";
        options.allow_absent_columns = true;
        const auto loaded = load_csv(path, schema, options);
        CHECK(loaded.dataset.records[0].feature("a").is_missing());
    }
    SUBCASE("unterminated quote") {
        const std::string path = dir.file("quote.csv");
        testutil::write_file(path, "a,target\n\"oops,10\n");
        CHECK_THROWS_AS(load_csv(path, schema, "target"), MalformedCsvError);
    }
    SUBCASE("duplicate ids") {
        const std::string path = dir.file("dup.csv");
        testutil::write_file(path, "_id,a,target\nx,1,10\nx,2,20\n");
        CHECK_THROWS_AS(load_csv(path, schema, "target"), MalformedCsvError);
    }
    SUBCASE("non-finite numerics rejected") {
        const std::string path = dir.file("inf.csv");
        testutil::write_file(path, "a,target\ninf,10\n");
        CHECK_THROWS_AS(load_csv(path, schema, "target"), UnparsableNumericError);
    }
    SUBCASE("duplicate feature names in the schema are rejected") {
        const std::string path = dir.file("dup_schema.csv");
        testutil::write_file(path, "a,target\n1,10\n");
        std::vector<FeatureSpec> dup = {{"a", FeatureKind::Numeric, "", "", ""},
                                        {"a", FeatureKind::Numeric, "", "", ""}};
        CHECK_THROWS_AS(load_csv(path, dup, "target"), InvalidArgumentError);
    }
}

TEST_CASE("RFC-4180 quoting round-trips through write_csv and load_csv") {
    TempDir dir;
    Dataset ds;
    ds.schema = {{"type", FeatureKind::Categorical, "", "", "Application Type"},
                 {"n", FeatureKind::Numeric, "", "", ""}};
    ds.target_name = "Effort";
    ds.provenance = Provenance::parse("synthetic");

    ProjectRecord r1;
    r1.id = "r1";
    r1.target_hours = 42.5;
    r1.features.emplace("type",
                        FeatureValue::categorical("Job, case, incident, project management;"));
    r1.features.emplace("n", FeatureValue::numeric(0.0, "0"));
    ProjectRecord r2;
    r2.id = "r2";
    r2.target_hours = 7.0;
    r2.features.emplace("type", FeatureValue::categorical("says \"hello\"\nworld"));
    r2.features.emplace("n", FeatureValue::missing());
    ds.records = {r1, r2};

    const std::string path = dir.file("roundtrip.csv");
    write_csv(ds, path);

    CsvLoadOptions options;
    options.target_column = "Effort";
    options.provenance = ds.provenance;
    const auto reloaded = load_csv(path, ds.schema, options);
    REQUIRE(reloaded.dataset.size() == 2);
    CHECK(reloaded.dataset.records[0].id == "r1");
    CHECK(reloaded.dataset.records[0].feature("type").text() ==
          "Job, case, incident, project management;");
    CHECK(reloaded.dataset.records[0].feature("n").lexeme() == "0");
    CHECK(reloaded.dataset.records[1].feature("type").text() == "says \"hello\"\nworld");
    CHECK(reloaded.dataset.records[1].feature("n").is_missing());

    // Canonical form is stable: writing the reload is byte-identical.
    const std::string again = dir.file("again.csv");
    write_csv(reloaded.dataset, again);
    CHECK(testutil::read_file(path) == testutil::read_file(again));
}

TEST_CASE("count_missing counts blanks and absent features over the selection") {
    const auto schema = testutil::numeric_schema(10);
    const auto names = [&] {
        std::vector<std::string> out;
        for (const auto& f : schema) out.push_back(f.name);
        return out;
    }();

    ProjectRecord full = testutil::numeric_record("a", schema,
                                                  {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 1.0);
    CHECK(count_missing(full, names, schema) == 0);

    // Four blanks planted by hand: two explicit Missing, two absent keys.
    ProjectRecord sparse = testutil::numeric_record("b", schema, {1, 2, 3, 4, 5, 6}, 1.0);
    sparse.features["f6"] = FeatureValue::missing();
    sparse.features["f7"] = FeatureValue::missing();
    CHECK(count_missing(sparse, names, schema) == 4);

    ProjectRecord empty;
    empty.id = "c";
    CHECK(count_missing(empty, names, schema) == 10);

    const std::vector<std::string> unknown = {"nope"};
    CHECK_THROWS_AS(count_missing(full, unknown, schema), UnknownFeatureError);
}

TEST_CASE("stratify_by_completeness matches planted tier cardinalities") {
    std::vector<std::size_t> planted;
    const Dataset ds = testutil::planted_missingness_dataset(&planted);
    REQUIRE(ds.size() == 100);

    CHECK(stratify_by_completeness(ds, {3}).size() == 60);
    CHECK(stratify_by_completeness(ds, {5}).size() == 85);
    CHECK(stratify_by_completeness(ds, {10}).size() == 100);  // vacuous filter

    SUBCASE("monotone in max_missing and consistent with the plant") {
        std::size_t expected = 0;
        std::vector<std::string> previous;
        for (std::size_t m = 0; m <= 10; ++m) {
            expected += planted[m];
            const Dataset tier = stratify_by_completeness(ds, {m});
            CHECK(tier.size() == expected);
            const auto ids = ids_of(tier);
            CHECK(std::includes(ids.begin(), ids.end(), previous.begin(), previous.end()));
            previous = ids;
        }
    }
    SUBCASE("idempotent") {
        const Dataset once = stratify_by_completeness(ds, {4});
        const Dataset twice = stratify_by_completeness(once, {4});
        CHECK(ids_of(once) == ids_of(twice));
    }
    SUBCASE("order and provenance preserved") {
        const Dataset tier = stratify_by_completeness(ds, {5});
        CHECK(tier.provenance.str() == "synthetic");
        auto ids = ids_of(tier);
        auto sorted_by_input = ids;  // planted ids are in input order already
        CHECK(ids == sorted_by_input);
    }
    SUBCASE("tier larger than schema is rejected") {
        CHECK_THROWS_AS(stratify_by_completeness(ds, {11}), InvalidArgumentError);
    }
}

TEST_CASE("split produces exact sizes and a seed-deterministic partition") {
    std::vector<std::size_t> planted;
    const Dataset ds = testutil::planted_missingness_dataset(&planted);

    SplitSpec spec;
    spec.seed = 7;
    const SplitResult parts = split(ds, spec);
    CHECK(parts.train.size() == 80);
    CHECK(parts.val.size() == 10);
    CHECK(parts.test.size() == 10);

    SUBCASE("outputs partition the input") {
        std::set<std::string> seen;
        for (const auto* part : {&parts.train, &parts.val, &parts.test}) {
            for (const auto& r : part->records) CHECK(seen.insert(r.id).second);
        }
        CHECK(seen.size() == ds.size());
    }
    SUBCASE("same seed, same partition; different seed differs") {
        const SplitResult again = split(ds, spec);
        CHECK(ids_of(again.train) == ids_of(parts.train));
        CHECK(ids_of(again.val) == ids_of(parts.val));
        CHECK(ids_of(again.test) == ids_of(parts.test));

        SplitSpec other = spec;
        other.seed = 8;
        CHECK(ids_of(split(ds, other).train) != ids_of(parts.train));
    }
}

TEST_CASE("pinned split sends the tier to train/test only") {
    // 228 records, all inside the pinned tier.
    Dataset ds;
    ds.schema = testutil::numeric_schema(10);
    for (int i = 0; i < 228; ++i) {
        ds.records.push_back(testutil::numeric_record(
            "t" + std::to_string(i), ds.schema, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 100.0 + i));
    }

    SplitSpec spec;
    spec.train_frac = 0.5;
    spec.val_frac = 0.0;
    spec.test_frac = 0.5;
    spec.seed = 3;
    spec.pinned = PinnedSplit{{3}, 0.5};

    const SplitResult parts = split(ds, spec);
    CHECK(parts.train.size() == 114);
    CHECK(parts.val.size() == 0);
    CHECK(parts.test.size() == 114);

    SUBCASE("mixed dataset: tier fills train/test, remainder fills the fractions") {
        Dataset mixed;
        mixed.schema = ds.schema;
        for (int i = 0; i < 60; ++i) {  // complete records: the pinned tier
            mixed.records.push_back(testutil::numeric_record(
                "t" + std::to_string(i), mixed.schema, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
                100.0 + i));
        }
        for (int i = 0; i < 240; ++i) {  // 6 blanks each: outside the tier
            mixed.records.push_back(testutil::numeric_record(
                "s" + std::to_string(i), mixed.schema, {1, 2, 3, 4}, 50.0 + i));
        }
        SplitSpec mixed_spec;
        mixed_spec.train_frac = 0.6;
        mixed_spec.val_frac = 0.2;
        mixed_spec.test_frac = 0.2;
        mixed_spec.seed = 11;
        mixed_spec.pinned = PinnedSplit{{3}, 0.5};
        const SplitResult out = split(mixed, mixed_spec);  // n=300
        CHECK(out.train.size() == 180);
        CHECK(out.val.size() == 60);
        CHECK(out.test.size() == 60);
        // No pinned-tier record lands in validation; 30 land in each of
        // train and test.
        for (const auto& r : out.val.records) CHECK(r.id[0] == 's');
        const auto tier_count = [](const Dataset& part) {
            std::size_t n = 0;
            for (const auto& r : part.records) n += r.id[0] == 't' ? 1 : 0;
            return n;
        };
        CHECK(tier_count(out.train) == 30);
        CHECK(tier_count(out.test) == 30);
    }
    SUBCASE("tier that cannot fit the fractions is rejected") {
        SplitSpec bad = spec;
        bad.train_frac = 0.8;
        bad.val_frac = 0.1;
        bad.test_frac = 0.1;  // test target 24 < 114 pinned test records
        CHECK_THROWS_AS(split(ds, bad), PinnedTierLargerThanSplitError);
    }
}

TEST_CASE("split rejects bad input") {
    Dataset empty;
    empty.schema = testutil::numeric_schema(2);
    CHECK_THROWS_AS(split(empty, SplitSpec{}), EmptyDatasetError);

    std::vector<std::size_t> planted;
    const Dataset ds = testutil::planted_missingness_dataset(&planted);
    SplitSpec bad;
    bad.train_frac = 0.9;  // sums to 1.1
    CHECK_THROWS_AS(split(ds, bad), InvalidArgumentError);
    SplitSpec negative;
    negative.train_frac = -0.1;
    negative.val_frac = 0.6;
    negative.test_frac = 0.5;
    CHECK_THROWS_AS(split(ds, negative), InvalidArgumentError);
}

TEST_CASE("feature values enforce their invariants") {
    CHECK_THROWS_AS(FeatureValue::numeric(std::numeric_limits<double>::quiet_NaN()),
                    InvalidArgumentError);
    CHECK_THROWS_AS(FeatureValue::numeric(std::numeric_limits<double>::infinity()),
                    InvalidArgumentError);
    CHECK_THROWS_AS(FeatureValue::categorical("   "), InvalidArgumentError);
    CHECK(FeatureValue::categorical("  x  ").text() == "x");
    CHECK(FeatureValue::numeric(3.0).lexeme() == "3.0");
    CHECK(FeatureValue::numeric(0.0, "0").lexeme() == "0");
}
