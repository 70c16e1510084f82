// Drives the built CLI binary (argv[1]) through its contract: exit codes,
// format handling, and determinism.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;
std::string cli;

void expect(bool cond, const std::string& what) {
    if (!cond) {
        ++failures;
        std::printf("FAIL %s\n", what.c_str());
    } else {
        std::printf("ok   %s\n", what.c_str());
    }
}

int run(const std::string& args, const std::string& err_path = "/dev/null") {
    const std::string cmd = cli + " " + args + " 2> " + err_path;
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <qaoa binary>\n");
        return 1;
    }
    cli = argv[1];

    write_file("cli_k3.json", R"({"problem": "maxcut", "data": {"n": 3, "edges": [[1,2],[2,3],[1,3]]}})");
    write_file("cli_bad.json", R"({"problem": "maxcut", "data": {"n": 3, "edges": [[1,2)");
    write_file("cli_p3.dimacs", "c path on three vertices\np edge 3 2\ne 1 2\ne 2 3\n");
    write_file("cli_mis.json", R"({"problem": "max-independent-set", "data": {"n": 3, "edges": [[1,2],[2,3]]}})");

    expect(run("solve --instance cli_k3.json -p 1 --grid-points 8 --seed 3 --out cli_out1.json") == 0,
           "solve exits 0 on a valid instance");

    expect(run("solve --instance cli_bad.json --seed 3", "cli_err.txt") == 2,
           "malformed JSON exits 2");
    {
        const std::string err = read_file("cli_err.txt");
        expect(err.find("input error") != std::string::npos &&
                   err.find("parse") != std::string::npos,
               "parse failure carries a position-bearing message");
    }

    expect(run("solve --instance cli_missing.json --seed 3") == 2, "missing file exits 2");

    expect(run("solve --instance cli_k3.json --mixer controlled-swap --seed 3") == 3,
           "catalog-incompatible mixer exits 3");
    expect(run("solve --instance cli_k3.json --encoding binary --seed 3") == 3,
           "binary encoding outside the catalog exits 3");

    expect(run("solve --instance cli_p3.dimacs --problem maxcut -p 1 --grid-points 8 --seed 3 "
               "--out cli_out_dimacs.json") == 0,
           "DIMACS edge lists parse for graph kinds");
    expect(run("solve --instance cli_p3.dimacs --seed 3") == 2,
           "DIMACS without --problem exits 2");

    expect(run("verify --checks '' --out cli_verify_empty.json") == 0,
           "empty check list exits 0");
    expect(read_file("cli_verify_empty.json") == "[]\n", "empty check list writes an empty report");

    // Uncontrolled X mixing on MIS violates feasibility preservation: exit 1.
    expect(run("verify --instance cli_mis.json --mixer x --checks feasibility "
               "--out cli_verify_bad.json") == 1,
           "injected uncontrolled mixer fails verification with exit 1");
    expect(run("verify --instance cli_mis.json --checks feasibility,phase "
               "--out cli_verify_good.json") == 0,
           "the cataloged MIS pipeline verifies clean");

    // MIS at p = 2 keeps every sampled state feasible (mass field exactly 0).
    expect(run("solve --instance cli_mis.json -p 2 --optimizer coordinate --seed 4 "
               "--out cli_mis_p2.json") == 0,
           "MIS p=2 solve runs");
    expect(read_file("cli_mis_p2.json").find("\"infeasible_mass\": 0.0") != std::string::npos,
           "MIS infeasible mass reports exactly zero");

    expect(run("resources --instance cli_k3.json --format csv --out cli_res.csv") == 0,
           "resources emits CSV");
    expect(read_file("cli_res.csv").find("metric,value\n") != std::string::npos,
           "CSV header present");

    // SAT kinds surface the symbolic phase bound as a note.
    write_file("cli_sat.json",
               R"({"problem": "max-l-sat", "data": {"n_vars": 3, "clauses": [[1,-2],[2,3]]}})");
    expect(run("resources --instance cli_sat.json --out cli_sat_res.json") == 0,
           "SAT resources run");
    expect(read_file("cli_sat_res.json").find("O(m 2^l)") != std::string::npos,
           "SAT phase bound note is reported");

    expect(run("resources --instance cli_k3.json --out cli_res.json --dump-circuit cli_dump.txt") ==
               0,
           "resources exits 0");
    {
        const std::string dump1 = read_file("cli_dump.txt");
        run("resources --instance cli_k3.json --out cli_res2.json --dump-circuit cli_dump2.txt");
        expect(!dump1.empty() && dump1 == read_file("cli_dump2.txt"),
               "circuit dump is byte-stable");
        expect(dump1.find("role=gamma(1)") != std::string::npos, "dump carries angle roles");
    }

    // Reduction kinds compile through their image pipelines and pull the
    // values back: covers of the path need one vertex (MIS of size 2).
    write_file("cli_mvc.json",
               R"({"problem": "min-vertex-cover", "data": {"n": 3, "edges": [[1,2],[2,3]]}})");
    expect(run("solve --instance cli_mvc.json -p 2 --optimizer coordinate --shots 400 --seed 3 "
               "--out cli_mvc_out.json") == 0,
           "min-vertex-cover solves via its reduction");
    {
        const std::string out = read_file("cli_mvc_out.json");
        expect(out.find("\"solved_via\": \"max-independent-set\"") != std::string::npos,
               "result records the reduction image");
        expect(out.find("\"value\": 1.0") != std::string::npos,
               "the optimal cover size 1 appears among samples");
    }

    // Mixer repeats multiply the per-level mixer block.
    {
        run("resources --instance cli_mis.json --out cli_rep1.json");
        run("resources --instance cli_mis.json --repeats 2 --out cli_rep2.json");
        const std::string r1 = read_file("cli_rep1.json"), r2 = read_file("cli_rep2.json");
        auto grab = [](const std::string& text) {
            const auto pos = text.find("\"partial_mixers\":");
            return std::atoi(text.c_str() + pos + 18);
        };
        expect(grab(r2) == 2 * grab(r1), "--repeats doubles the partial mixer count");
    }

    expect(run("sweep --instance cli_k3.json -p 1 --grid-points 4 --seed 5 --out cli_sweep.csv") ==
               0,
           "sweep exits 0");
    {
        const std::string csv = read_file("cli_sweep.csv");
        int rows = 0;
        for (char ch : csv) rows += ch == '\n';
        expect(rows == 18, "4x4 sweep has 16 rows plus headers");
        expect(csv.rfind("# config=", 0) == 0, "sweep carries the config fingerprint");
        expect(csv.find("gamma1,beta1,expectation,ratio\n") != std::string::npos,
               "sweep header order");
    }

    expect(run("solve --instance cli_mis.json --phase-mode semantic -p 1 --grid-points 8 "
               "--seed 3 --out cli_sem.json") == 0,
           "semantic phase mode runs");
    expect(run("solve --instance cli_mis.json --simultaneous -p 1 --grid-points 8 --seed 3 "
               "--out cli_sim.json") == 0,
           "simultaneous (H-QAOA) mixer runs");
    {
        // Encoded and semantic separators give the same physics.
        const std::string a = read_file("cli_sem.json");
        run("solve --instance cli_mis.json -p 1 --grid-points 8 --seed 3 --out cli_enc.json");
        const std::string b = read_file("cli_enc.json");
        auto grab = [](const std::string& text) {
            const auto pos = text.find("\"expectation\":");
            return std::atof(text.c_str() + pos + 15);
        };
        expect(std::abs(grab(a) - grab(b)) < 1e-9,
               "semantic and encoded separators agree on expectation");
    }

    // Worker count must not change sweep bytes.
    {
        const int r1 = std::system((std::string("QAOA_KIT_THREADS=1 ") + cli +
                                    " sweep --instance cli_k3.json -p 1 --grid-points 6 "
                                    "--seed 5 --out cli_sweep_t1.csv 2> /dev/null")
                                       .c_str());
        const int r2 = std::system((std::string("QAOA_KIT_THREADS=4 ") + cli +
                                    " sweep --instance cli_k3.json -p 1 --grid-points 6 "
                                    "--seed 5 --out cli_sweep_t4.csv 2> /dev/null")
                                       .c_str());
        expect(WEXITSTATUS(r1) == 0 && WEXITSTATUS(r2) == 0 &&
                   read_file("cli_sweep_t1.csv") == read_file("cli_sweep_t4.csv"),
               "sweep bytes are independent of QAOA_KIT_THREADS");
    }

    // Optimized K3 run: the optimum cut (value 2) shows up within 1000 shots.
    expect(run("solve --instance cli_k3.json -p 1 --grid-points 32 --shots 1000 --seed 9 "
               "--out cli_k3_shots.json") == 0,
           "solve with 1000 shots succeeds");
    {
        const std::string out = read_file("cli_k3_shots.json");
        expect(out.find("\"best_sampled\"") != std::string::npos &&
                   out.find("\"value\": 2.0") != std::string::npos,
               "an optimum-achieving sample appears among 1000 shots");
    }

    if (failures) std::printf("%d CLI check(s) failed\n", failures);
    return failures ? 1 : 0;
}
