#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "proc.hpp"

namespace {

const std::string kCli = NETBN_CLI_PATH;
const std::string kFixtures = NETBN_FIXTURES_DIR;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::string write_temp(const std::string& tag, const std::string& text) {
    std::string path = proc::temp_path(tag);
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

// Builds the demo model once; later cases reuse the file.
const std::string& demo_model_path() {
    static std::string path = [] {
        std::string p = proc::temp_path("model") + ".json";
        auto r = proc::run({kCli, "augment", "--matrix", fixture("demo_matrix.csv"),
                            "--a", "0.7", "--population", "10000", "-o", p});
        REQUIRE_EQ(r.code, 0);
        return p;
    }();
    return path;
}

}  // namespace

TEST_CASE("version and usage errors") {
    auto version = proc::run({kCli, "--version"});
    CHECK_EQ(version.code, 0);
    CHECK(proc::contains(version.out, "netbn 0.1.0"));

    auto bare = proc::run({kCli});
    CHECK_EQ(bare.code, 2);
    CHECK(proc::contains(bare.err, "error:"));

    auto unknown = proc::run({kCli, "validate", "--matrix", "x", "--bogus"});
    CHECK_EQ(unknown.code, 2);

    auto missing_required = proc::run({kCli, "augment", "--matrix", "x"});
    CHECK_EQ(missing_required.code, 2);

    auto help = proc::run({kCli, "--help"});
    CHECK_EQ(help.code, 0);
    CHECK(proc::contains(help.out, "augment"));
    CHECK(proc::contains(help.out, "predict"));
}

TEST_CASE("validate reports the matrix shape and sequences") {
    auto r = proc::run({kCli, "validate", "--matrix", fixture("demo_matrix.csv")});
    CHECK_EQ(r.code, 0);
    CHECK(proc::contains(r.out, "matrix ok: 5 failures, 5 events"));
    CHECK(proc::contains(r.out, "start states: E1 E2"));
    CHECK(proc::contains(r.out, "F1: E1 E2 E4 E5"));
    CHECK(proc::contains(r.out, "F2: E1 E2 E3 E5"));
    CHECK(proc::contains(r.out, "F5: E1 E3 E5"));
}

TEST_CASE("validate surfaces parse errors with their location") {
    auto missing = proc::run({kCli, "validate", "--matrix", "/nonexistent.csv"});
    CHECK_EQ(missing.code, 1);
    CHECK(proc::contains(missing.err, "error:"));

    auto path = write_temp("badmatrix", "failure,E1,E2\nF1,1,0\nF2,1\n");
    auto bad = proc::run({kCli, "validate", "--matrix", path});
    CHECK_EQ(bad.code, 1);
    CHECK(proc::contains(bad.err, path + ":3"));
    std::remove(path.c_str());
}

TEST_CASE("augment prints the population table and writes the model") {
    std::string out_path = proc::temp_path("augmodel") + ".json";
    auto r = proc::run({kCli, "augment", "--matrix", fixture("demo_matrix.csv"),
                        "--a", "0.7", "--population", "10000", "-o", out_path});
    CHECK_EQ(r.code, 0);
    CHECK(proc::contains(r.out, "failure,count\n"));
    CHECK(proc::contains(r.out, "F1,7000\n"));
    CHECK(proc::contains(r.out, "F2,1750\n"));
    CHECK(proc::contains(r.out, "F3,777\n"));
    CHECK(proc::contains(r.out, "F4,437\n"));
    CHECK(proc::contains(r.out, "F5,280\n"));
    CHECK(proc::contains(r.out, "total,10244\n"));
    CHECK(proc::contains(r.out, "E1,0.924151\n"));
    CHECK(proc::contains(r.out, "E2,0.930008\n"));
    CHECK(proc::contains(r.out, "E3,0.240824\n"));
    CHECK(proc::contains(r.out, "E4,0.801835\n"));
    CHECK(proc::contains(r.out, "E5,0.957341\n"));
    CHECK(proc::contains(r.out, "model written to " + out_path));

    std::ifstream model_file(out_path);
    CHECK(model_file.good());
    std::remove(out_path.c_str());
}

TEST_CASE("augment usage errors exit with code 2") {
    auto sampled = proc::run({kCli, "augment", "--matrix",
                              fixture("demo_matrix.csv"), "-o", "/tmp/x.json",
                              "--mode", "sampled"});
    CHECK_EQ(sampled.code, 2);
    CHECK(proc::contains(sampled.err, "--seed"));

    auto both = proc::run({kCli, "augment", "--matrix", fixture("demo_matrix.csv"),
                           "-o", "/tmp/x.json", "--a", "0.7", "--normalize"});
    CHECK_EQ(both.code, 2);

    auto structure =
        proc::run({kCli, "augment", "--matrix", fixture("demo_matrix.csv"), "-o",
                   "/tmp/x.json", "--edges", fixture("demo_edges.txt"), "--window",
                   "3"});
    CHECK_EQ(structure.code, 2);

    auto badmode = proc::run({kCli, "augment", "--matrix",
                              fixture("demo_matrix.csv"), "-o", "/tmp/x.json",
                              "--mode", "guess"});
    CHECK_EQ(badmode.code, 2);
}

TEST_CASE("augment validation errors exit with code 1") {
    auto degenerate = proc::run({kCli, "augment", "--matrix",
                                 fixture("demo_matrix.csv"), "-o", "/tmp/x.json",
                                 "--a", "0.7", "--population", "30"});
    CHECK_EQ(degenerate.code, 1);
    CHECK(proc::contains(degenerate.err, "larger population"));

    auto small_k = proc::run({kCli, "augment", "--matrix",
                              fixture("demo_matrix.csv"), "-o", "/tmp/x.json",
                              "--k", "1.5"});
    CHECK_EQ(small_k.code, 1);
}

TEST_CASE("augment accepts an explicit edge structure") {
    std::string out_path = proc::temp_path("edgemodel") + ".json";
    auto r = proc::run({kCli, "augment", "--matrix", fixture("demo_matrix.csv"),
                        "--a", "0.7", "--population", "10000", "--edges",
                        fixture("demo_edges.txt"), "-o", out_path});
    CHECK_EQ(r.code, 0);
    CHECK(proc::contains(r.out, "total,10244"));

    // The demo edge list mirrors window 2, so queries behave identically.
    auto q = proc::run({kCli, "query", "--model", out_path, "--evidence", "E1"});
    CHECK_EQ(q.code, 0);
    CHECK(proc::contains(q.out, "Failure F1"));
    std::remove(out_path.c_str());
}

TEST_CASE("sampled augmentation is reproducible for a fixed seed") {
    std::string p1 = proc::temp_path("sampled1") + ".json";
    std::string p2 = proc::temp_path("sampled2") + ".json";
    auto r1 = proc::run({kCli, "augment", "--matrix", fixture("demo_matrix.csv"),
                         "--a", "0.7", "--population", "10000", "--mode", "sampled",
                         "--seed", "42", "-o", p1});
    auto r2 = proc::run({kCli, "augment", "--matrix", fixture("demo_matrix.csv"),
                         "--a", "0.7", "--population", "10000", "--mode", "sampled",
                         "--seed", "42", "-o", p2});
    CHECK_EQ(r1.code, 0);
    CHECK_EQ(r2.code, 0);
    // stdout matches up to the output path, which differs per run.
    CHECK_EQ(r1.out.substr(0, r1.out.find("model written to")),
             r2.out.substr(0, r2.out.find("model written to")));
    CHECK_EQ(proc::slurp_and_remove(p1), proc::slurp_and_remove(p2));
    CHECK(proc::contains(r1.out, "total,10000\n"));
}

TEST_CASE("export-cpt renders the estimated tables at six digits") {
    auto r = proc::run({kCli, "export-cpt", "--model", demo_model_path()});
    CHECK_EQ(r.code, 0);
    CHECK(proc::contains(r.out, "event,parents,config,p0,p1,filler\n"));
    CHECK(proc::contains(r.out, "E1,,,0.075849,0.924151,0\n"));
    CHECK(proc::contains(r.out, "E2,E1,0,0.000000,1.000000,0\n"));
    CHECK(proc::contains(r.out, "E2,E1,1,0.075737,0.924263,0\n"));
    CHECK(proc::contains(r.out, "E3,E1;E2,00,1.000000,0.000000,1\n"));
    CHECK(proc::contains(r.out, "E3,E1;E2,11,0.800000,0.200000,0\n"));
    CHECK(proc::contains(r.out, "E4,E2;E3,01,0.390516,0.609484,0\n"));
    CHECK(proc::contains(r.out, "E5,E3;E4,11,1.000000,0.000000,0\n"));

    // Exporting the same model twice is byte-identical.
    std::string out_path = proc::temp_path("cpt") + ".csv";
    auto to_file = proc::run(
        {kCli, "export-cpt", "--model", demo_model_path(), "-o", out_path});
    CHECK_EQ(to_file.code, 0);
    CHECK(proc::contains(to_file.out, "tables written to"));
    CHECK_EQ(proc::slurp_and_remove(out_path), r.out);
}

TEST_CASE("query reproduces the reference scenario transcripts") {
    const std::string& model = demo_model_path();

    SUBCASE("single event") {
        auto r = proc::run({kCli, "query", "--model", model, "--evidence", "E1"});
        CHECK_EQ(r.code, 0);
        CHECK(proc::contains(r.out,
                             "OUTPUT:\n"
                             "    {'E2': '1', 'E3': '0', 'E4': '1', 'E5': '1'}\n"));
        CHECK(proc::contains(
            r.out,
            "PREDICTION:\n"
            "    {'E1': '1', 'E2': '1', 'E3': '0', 'E4': '1', 'E5': '1'} "
            "--> Failure F1\n"));
        CHECK(proc::contains(r.out, "score: 0.739411\n"));
        CHECK(r.err.empty());
    }

    SUBCASE("two events") {
        auto r = proc::run({kCli, "query", "--model", model, "--evidence", "E1,E2"});
        CHECK_EQ(r.code, 0);
        CHECK(proc::contains(r.out, "    {'E3': '0', 'E4': '1', 'E5': '1'}\n"));
        CHECK(proc::contains(r.out, "--> Failure F1\n"));
        CHECK(proc::contains(r.out, "score: 0.800000\n"));
    }

    SUBCASE("three events flip the prediction") {
        auto r =
            proc::run({kCli, "query", "--model", model, "--evidence", "E1,E2,E3"});
        CHECK_EQ(r.code, 0);
        CHECK(proc::contains(r.out, "    {'E4': '0', 'E5': '1'}\n"));
        CHECK(proc::contains(
            r.out,
            "    {'E1': '1', 'E2': '1', 'E3': '1', 'E4': '0', 'E5': '1'} "
            "--> Failure F2\n"));
        CHECK(proc::contains(r.out, "score: 1.000000\n"));
    }

    SUBCASE("impossible evidence stays exit 0 but warns") {
        auto r = proc::run(
            {kCli, "query", "--model", model, "--evidence", "E1,E2,E3,E4"});
        CHECK_EQ(r.code, 0);
        CHECK(proc::contains(r.out, "    {'E5': '0'}\n"));
        CHECK(proc::contains(
            r.out,
            "    {'E1': '1', 'E2': '1', 'E3': '1', 'E4': '1', 'E5': '0'} "
            "--> invalid event\n"));
        CHECK(proc::contains(r.out, "score: 0.000000\n"));
        CHECK(proc::contains(r.err, "probability zero"));
    }

    SUBCASE("mid-sequence evidence") {
        auto r = proc::run({kCli, "query", "--model", model, "--evidence", "E2,E4",
                            "--query", "E5"});
        CHECK_EQ(r.code, 0);
        CHECK(proc::contains(r.out, "    {'E5': '1'}\n"));
        CHECK(proc::contains(
            r.out,
            "    {'E1': '0', 'E2': '1', 'E3': '0', 'E4': '1', 'E5': '1'} "
            "--> Failure F3\n"));
        CHECK(proc::contains(r.out, "score: 1.000000\n"));
    }

    SUBCASE("the divergent scenario follows the posterior") {
        auto r = proc::run({kCli, "query", "--model", model, "--evidence", "E1,E3",
                            "--query", "E4,E5", "--verbose"});
        CHECK_EQ(r.code, 0);
        CHECK(proc::contains(r.out, "    {'E4': '0', 'E5': '1'}\n"));
        CHECK(proc::contains(
            r.out,
            "    {'E1': '1', 'E2': '0', 'E3': '1', 'E4': '0', 'E5': '1'} "
            "--> Failure F5\n"));
        CHECK(proc::contains(r.out, "score: 0.822862\n"));
        CHECK(proc::contains(r.out,
                             "Pr({'E4': '0', 'E5': '1'}) = 0.822862\n"));
        CHECK(proc::contains(r.out,
                             "Pr({'E4': '1', 'E5': '0'}) = 0.177138\n"));
        CHECK(proc::contains(
            r.out, "runner-up: {'E4': '1', 'E5': '0'} mass 0.177138\n"));
    }

    SUBCASE("last difference") {
        auto r = proc::run({kCli, "query", "--model", model, "--evidence",
                            "E1,E3,E5", "--query", "E4"});
        CHECK_EQ(r.code, 0);
        CHECK(proc::contains(r.out, "    {'E4': '0'}\n"));
        CHECK(proc::contains(
            r.out,
            "    {'E1': '1', 'E2': '0', 'E3': '1', 'E4': '0', 'E5': '1'} "
            "--> Failure F5\n"));
        CHECK(proc::contains(r.out, "score: 1.000000\n"));
    }
}

TEST_CASE("query evidence parsing errors") {
    const std::string& model = demo_model_path();

    auto unknown =
        proc::run({kCli, "query", "--model", model, "--evidence", "E9"});
    CHECK_EQ(unknown.code, 1);
    CHECK(proc::contains(unknown.err, "unknown event 'E9'"));

    auto absence =
        proc::run({kCli, "query", "--model", model, "--evidence", "E1=0"});
    CHECK_EQ(absence.code, 1);
    CHECK(proc::contains(absence.err, "--allow-absence"));

    auto allowed = proc::run({kCli, "query", "--model", model, "--evidence",
                              "E1=0", "--allow-absence"});
    CHECK_EQ(allowed.code, 0);
    CHECK(proc::contains(allowed.out, "--> Failure F3\n"));

    auto conflict = proc::run({kCli, "query", "--model", model, "--evidence",
                               "E1=1,E1=0", "--allow-absence"});
    CHECK_EQ(conflict.code, 1);
    CHECK(proc::contains(conflict.err, "conflicting evidence"));

    auto bad_value =
        proc::run({kCli, "query", "--model", model, "--evidence", "E1=yes"});
    CHECK_EQ(bad_value.code, 1);

    auto overlap = proc::run({kCli, "query", "--model", model, "--evidence", "E1",
                              "--query", "E1"});
    CHECK_EQ(overlap.code, 1);
}

TEST_CASE("synth writes the failure's event sequence") {
    auto r = proc::run(
        {kCli, "synth", "--matrix", fixture("demo_matrix.csv"), "--failure", "F2"});
    CHECK_EQ(r.code, 0);
    CHECK_EQ(r.out,
             "2025-01-01 00:00:00 E1 clock drift exceeding threshold\n"
             "2025-01-01 00:00:01 E2 temperature rising above limit\n"
             "2025-01-01 00:00:02 E3 OSNR below lower threshold\n"
             "2025-01-01 00:00:03 E5 laser bias current out of range\n");

    auto spaced = proc::run({kCli, "synth", "--matrix", fixture("demo_matrix.csv"),
                             "--failure", "F5", "--base", "2025-06-30 12:00:00",
                             "--spacing", "30"});
    CHECK_EQ(spaced.code, 0);
    CHECK_EQ(spaced.out,
             "2025-06-30 12:00:00 E1 clock drift exceeding threshold\n"
             "2025-06-30 12:00:30 E3 OSNR below lower threshold\n"
             "2025-06-30 12:01:00 E5 laser bias current out of range\n");

    auto unknown = proc::run(
        {kCli, "synth", "--matrix", fixture("demo_matrix.csv"), "--failure", "F9"});
    CHECK_EQ(unknown.code, 1);
    CHECK(proc::contains(unknown.err, "unknown failure 'F9'"));

    auto bad_base =
        proc::run({kCli, "synth", "--matrix", fixture("demo_matrix.csv"),
                   "--failure", "F1", "--base", "yesterday"});
    CHECK_EQ(bad_base.code, 1);
}

TEST_CASE("predict walks a synthetic log to the right verdict") {
    std::string log_path = proc::temp_path("f2log") + ".log";
    auto synth = proc::run({kCli, "synth", "--matrix", fixture("demo_matrix.csv"),
                            "--failure", "F2", "-o", log_path});
    REQUIRE_EQ(synth.code, 0);

    auto r = proc::run({kCli, "predict", "--model", demo_model_path(), "--log",
                        log_path});
    CHECK_EQ(r.code, 0);

    std::vector<std::string> lines;
    std::string line;
    std::istringstream out(r.out);
    while (std::getline(out, line)) lines.push_back(line);
    REQUIRE_EQ(lines.size(), 4u);

    CHECK(proc::contains(lines[0], "observed=E1\t"));
    CHECK(proc::contains(lines[0], "--> Failure F1\tscore=0.739411\tzero_evidence=0"));
    CHECK(proc::contains(lines[1], "observed=E1,E2\t"));
    CHECK(proc::contains(lines[1], "--> Failure F1\tscore=0.800000\tzero_evidence=0"));
    CHECK(proc::contains(lines[2], "observed=E1,E2,E3\t"));
    CHECK(proc::contains(lines[2], "--> Failure F2\tscore=1.000000\tzero_evidence=0"));
    CHECK(proc::contains(lines[3], "observed=E1,E2,E3,E5\t"));
    CHECK(proc::contains(lines[3], "--> Failure F2\tscore=1.000000\tzero_evidence=0"));
    CHECK(proc::contains(lines[0], "2025-01-01 00:00:00\t"));
    CHECK(proc::contains(r.err, "4 lines, 4 matched"));

    auto limited = proc::run({kCli, "predict", "--model", demo_model_path(),
                              "--log", log_path, "--max-events", "2"});
    CHECK_EQ(limited.code, 0);
    int records = 0;
    for (char c : limited.out)
        if (c == '\n') ++records;
    CHECK_EQ(records, 2);

    std::remove(log_path.c_str());
}

TEST_CASE("predict applies extraction rules and surfaces warnings") {
    const std::string& model = demo_model_path();

    SUBCASE("custom rules match phrases without labels") {
        auto log = write_temp("ruleslog",
                              "2025-01-01 00:00:00 node4 temperature rising fast\n"
                              "2025-01-01 00:00:05 node4 no signal from peer\n");
        auto r = proc::run({kCli, "predict", "--model", model, "--log", log,
                            "--rules", fixture("demo_rules.json")});
        CHECK_EQ(r.code, 0);
        CHECK(proc::contains(r.err, "2 lines, 2 matched"));
        CHECK(proc::contains(r.out, "observed=E2,E4\t"));
        CHECK(proc::contains(r.out, "--> Failure F3\tscore=1.000000"));
        std::remove(log.c_str());
    }

    SUBCASE("mid-stream joins warn about the start state") {
        auto log = write_temp("midlog", "2025-01-01 00:00:00 E4 alarm\n");
        auto r = proc::run({kCli, "predict", "--model", model, "--log", log});
        CHECK_EQ(r.code, 0);
        CHECK(proc::contains(r.err, "not a start state"));
        std::remove(log.c_str());
    }

    SUBCASE("missing timestamps degrade with a warning") {
        auto log = write_temp("nots", "E1 clock drift alarm\n");
        auto r = proc::run({kCli, "predict", "--model", model, "--log", log});
        CHECK_EQ(r.code, 0);
        CHECK(proc::contains(r.err, "line without timestamp"));
        CHECK(proc::contains(r.out, "-\tobserved=E1\t"));
        std::remove(log.c_str());
    }

    SUBCASE("verbose prints marginals for unobserved events") {
        auto log = write_temp("verb", "2025-01-01 00:00:00 E1 alarm\n");
        auto r = proc::run(
            {kCli, "predict", "--model", model, "--log", log, "--verbose"});
        CHECK_EQ(r.code, 0);
        CHECK(proc::contains(r.out, "    Pr(E2=1) = "));
        CHECK(proc::contains(r.out, "    Pr(E5=1) = "));
        CHECK_FALSE(proc::contains(r.out, "    Pr(E1=1)"));
        std::remove(log.c_str());
    }

    SUBCASE("a log with no recognized events fails") {
        auto log = write_temp("noev", "2025-01-01 00:00:00 routine heartbeat\n");
        auto r = proc::run({kCli, "predict", "--model", model, "--log", log});
        CHECK_EQ(r.code, 1);
        CHECK(proc::contains(r.err, "no recognized events"));
        std::remove(log.c_str());
    }

    SUBCASE("zero-probability streams flag every later verdict") {
        auto log = write_temp("invalid",
                              "2025-01-01 00:00:00 E1 a\n"
                              "2025-01-01 00:00:01 E2 b\n"
                              "2025-01-01 00:00:02 E3 c\n"
                              "2025-01-01 00:00:03 E4 d\n");
        auto r = proc::run({kCli, "predict", "--model", model, "--log", log});
        CHECK_EQ(r.code, 0);
        CHECK(proc::contains(r.out, "--> invalid event\tscore=0.000000\t"
                                    "zero_evidence=1"));
        CHECK(proc::contains(r.err, "probability zero"));
        std::remove(log.c_str());
    }
}

TEST_CASE("model files reject tampering at load time") {
    std::string path = proc::temp_path("tamper") + ".json";
    {
        std::ifstream in(demo_model_path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        auto pos = text.find("\"p1\": 0.2\n");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 10, "\"p1\": 0.3\n");
        std::ofstream out(path, std::ios::binary);
        out << text;
    }
    auto r = proc::run({kCli, "query", "--model", path, "--evidence", "E1"});
    CHECK_EQ(r.code, 1);
    CHECK(proc::contains(r.err, "error:"));
    std::remove(path.c_str());
}
