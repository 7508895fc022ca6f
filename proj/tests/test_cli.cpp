#include "doctest.h"
#include "json.hpp"
#include "newsgram/service/api.hpp"
#include "newsgram/service/snapshot_store.hpp"
#include "process.hpp"

using testing::run_cli;

namespace {

struct Workspace {
    testing::TempDir tmp{"cli"};
    std::filesystem::path sources = testing::write_fixture_sources(tmp.path());
    std::filesystem::path data = tmp / "data";

    testing::RunResult run(std::vector<std::string> args) {
        std::vector<std::string> full{"--data-dir", data.string(), "--sources", sources.string()};
        full.insert(full.end(), args.begin(), args.end());
        return run_cli(full, tmp / "io");
    }
};

std::size_t accepted_total(const std::string& report) {
    std::istringstream in(report);
    std::string line;
    std::getline(in, line);
    std::size_t total = 0;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string id, fetched, accepted;
        std::getline(fields, id, '\t');
        std::getline(fields, fetched, '\t');
        std::getline(fields, accepted, '\t');
        total += std::stoul(accepted);
    }
    return total;
}

}  // namespace

TEST_CASE("harvest over file fixtures, then a rerun accepts nothing") {
    Workspace w;
    const auto first = w.run({"harvest"});
    CHECK(first.exit_code == 0);
    CHECK(first.out.rfind("source\tfetched\taccepted\tduplicates\tdropped_empty\terror\n", 0) == 0);
    CHECK(first.out.find("spiegel\t20\t20\t") != std::string::npos);
    CHECK(accepted_total(first.out) == 31);
    const auto archive = testing::slurp(w.data / "archive" / "raw-items.tsv");

    const auto second = w.run({"harvest"});
    CHECK(second.exit_code == 0);
    CHECK(accepted_total(second.out) == 0);
    CHECK(testing::slurp(w.data / "archive" / "raw-items.tsv") == archive);
}

TEST_CASE("harvest exits 1 only when every source fails") {
    Workspace w;
    testing::spit(w.sources, "broken\tBroken\tfile://" +
                                 std::filesystem::canonical(testing::kFixtures / "feeds" / "broken.xml").string() +
                                 "\tDE\nmissing\tMissing\tfile:///nonexistent/feed.xml\tDE\n");
    const auto r = w.run({"harvest"});
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("broken\t0\t0\t0\t0\t") != std::string::npos);

    testing::write_fixture_sources(w.tmp.path(), true);
    CHECK(w.run({"harvest"}).exit_code == 0);
}

TEST_CASE("usage errors exit 2") {
    Workspace w;
    CHECK(run_cli({}, w.tmp / "io").exit_code == 2);
    CHECK(run_cli({"frobnicate"}, w.tmp / "io").exit_code == 2);
    CHECK(run_cli({"--sources", (w.tmp / "none.tsv").string(), "harvest"}, w.tmp / "io").exit_code == 2);
    CHECK(w.run({"--timezone", "Mars/Olympus", "harvest"}).exit_code == 2);
    CHECK(w.run({"--exclusions", (w.tmp / "none.txt").string(), "build"}).exit_code == 2);
    CHECK(w.run({"--msttr-segment", "1", "build"}).exit_code == 2);
    CHECK(w.run({"query", "--patterns", "corona", "--window", "15"}).exit_code == 2);
    CHECK(w.run({"query", "--patterns", "corona", "--mode", "regex"}).exit_code == 2);
    CHECK(w.run({"query"}).exit_code == 2);
    CHECK(run_cli({"--help"}, w.tmp / "io").exit_code == 0);
}

TEST_CASE("runtime errors exit 1") {
    Workspace w;
    const auto nothing = w.run({"build"});
    CHECK(nothing.exit_code == 1);
    CHECK(nothing.err.find("error:") != std::string::npos);
    CHECK(w.run({"query", "--patterns", "corona"}).exit_code == 1);
    CHECK(w.run({"metrics"}).exit_code == 1);
}

TEST_CASE("build, metrics, query and bigrams") {
    Workspace w;
    REQUIRE(w.run({"harvest"}).exit_code == 0);
    const auto build = w.run({"build"});
    CHECK(build.exit_code == 0);
    CHECK(build.out == "published generation 1\n");

    const auto metrics = w.run({"metrics", "--out", (w.tmp / "report").string()});
    CHECK(metrics.exit_code == 0);
    const auto csv = testing::slurp(w.tmp / "report" / "metrics.csv");
    CHECK(csv.rfind("date,redundancy,msttr,top100_share\n", 0) == 0);
    CHECK(std::filesystem::exists(w.tmp / "report" / "report.html"));
    CHECK(w.run({"metrics", "--as-of", "2000-01-01"}).exit_code == 1);

    newsgram::service::SnapshotStore store;
    store.refresh(newsgram::service::DataLayout{w.data});
    newsgram::service::Api api(store);
    const auto q = w.run({"query", "--patterns", "fc,corona", "--mode", "exact"});
    CHECK(q.exit_code == 0);
    CHECK(q.out == api.export_csv({{"patterns", "fc,corona"}, {"mode", "exact"}}).body);
    CHECK(q.out.rfind("date,pattern,abs,rel,smoothed\n", 0) == 0);

    const auto within = w.run({"query", "--patterns", "corona", "--mode", "within", "--window", "3", "--from",
                               "2020-04-14", "--to", "2020-04-16"});
    CHECK(within.exit_code == 0);
    CHECK(within.out == api.export_csv({{"patterns", "corona"}, {"mode", "within"}, {"window", "3"},
                                        {"from", "2020-04-14"}, {"to", "2020-04-16"}})
                            .body);

    const auto js = w.run({"query", "--patterns", "neue normalität", "--json"});
    CHECK(js.exit_code == 0);
    CHECK(nlohmann::json::parse(js.out)["series"][0]["kind"] == "bigram");

    CHECK(w.run({"query", "--patterns", ".*"}).exit_code == 2);
    CHECK(w.run({"query", "--patterns", "corona", "--from", "2020-04-16", "--to", "2020-04-14"}).exit_code == 2);
    CHECK(w.run({"query", "--patterns", "a,b,c,d,e,f,g,h,i,j,k"}).exit_code == 2);

    const auto bg = w.run({"bigrams", "--pattern", "corona", "--limit", "5"});
    CHECK(bg.exit_code == 0);
    CHECK(bg.out.rfind("form1,form2,count\n", 0) == 0);
    const auto bj = nlohmann::json::parse(w.run({"bigrams", "--pattern", "corona", "--limit", "5", "--json"}).out);
    std::string expected = "form1,form2,count\n";
    for (const auto& r : bj["results"])
        expected += r["first"].get<std::string>() + "," + r["second"].get<std::string>() + "," +
                    std::to_string(r["count"].get<unsigned long long>()) + "\n";
    CHECK(bg.out == expected);
    CHECK(w.run({"bigrams", "--pattern", "neue normalität"}).exit_code == 2);
    CHECK(w.run({"bigrams", "--pattern", "corona", "--bmode", "middle"}).exit_code == 2);

    CHECK(w.run({"build"}).out == "published generation 2\n");
}
