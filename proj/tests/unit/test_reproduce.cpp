#include <doctest.h>

#include "expect.hpp"
#include "taylor/reproduce.hpp"

using namespace taylor;
using fixtures::kind_of;

TEST_CASE("every reference table matches its golden file") {
    for (Country c : {Country::us, Country::uk}) {
        const Dataset d = reproduction_dataset(c);
        for (int id : tables_for(c)) {
            const TableRun run = run_table(d, c, id);
            const GoldenTable golden = load_golden(golden_path(default_golden_dir(), id));
            CHECK(golden.country == to_string(c));
            const GoldenDiff diff = compare_golden(flatten(run.output), golden);
            CHECK_MESSAGE(diff.passed(), render_text(diff));
            CHECK_FALSE(render(run.output, OutputFormat::text).empty());
        }
    }
}

TEST_CASE("table routing") {
    CHECK(tables_for(Country::us).size() == 9);
    CHECK(tables_for(Country::uk).size() == 8);
    CHECK(table_belongs(Country::uk, 12));
    CHECK_FALSE(table_belongs(Country::us, 12));
    const Dataset d = reproduction_dataset(Country::us);
    CHECK(kind_of([&] { run_table(d, Country::us, 12); }) == ErrorKind::config);
    CHECK(kind_of([] { (void)table_title(18); }) == ErrorKind::config);
    CHECK(std::holds_alternative<TestReport>(run_table(d, Country::us, 2).output));
    CHECK(std::holds_alternative<GmmResult>(run_table(d, Country::us, 9).output));
}

TEST_CASE("reproduction is deterministic") {
    const Dataset d = reproduction_dataset(Country::uk);
    for (int id : tables_for(Country::uk))
        CHECK(render(run_table(d, Country::uk, id).output, OutputFormat::json) ==
              render(run_table(reproduction_dataset(Country::uk), Country::uk, id).output, OutputFormat::json));
}
