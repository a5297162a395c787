// End-to-end checks of the command-line tool: exit codes, file formats,
// report determinism. Invoked with the binary path as argv[1].

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "[FAIL] " << what << "\n";
    }
}

struct RunResult {
    int exit_code;
    std::string out;
};

std::string g_binary;
std::string g_dir;

RunResult run(const std::string& args) {
    std::string outfile = g_dir + "/out.txt";
    std::string cmd = g_binary + " " + args + " > " + outfile + " 2>" + g_dir + "/err.txt";
    int rc = std::system(cmd.c_str());
    std::ifstream in(outfile);
    std::ostringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

void write_file(const std::string& name, const std::string& content) {
    std::ofstream out(g_dir + "/" + name);
    out << content;
}

std::string strip_timing(std::string s) {
    return std::regex_replace(s, std::regex("\"timing_ms\": [0-9]+"), "\"timing_ms\": 0");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <twt binary>\n";
        return 1;
    }
    g_binary = argv[1];
    char tmpl[] = "/tmp/twt_cli_XXXXXX";
    g_dir = mkdtemp(tmpl);

    write_file("c3.dtw", "p dtw 3 3\na 1 2\na 2 3\na 3 1\n");
    write_file("tr16.dtw", [] {
        std::string s = "p dtw 16 120\n";
        for (int u = 1; u <= 16; ++u)
            for (int v = u + 1; v <= 16; ++v)
                s += "a " + std::to_string(u) + " " + std::to_string(v) + "\n";
        return s;
    }());
    write_file("sigma.perm", "s 5\n3 1 4 5 2\n");
    write_file("ds2.sexp",
               "(exists (x1 x2) (forall (y) (or (arc y x1) (= y x1) (arc y x2) (= y x2))))");
    write_file("bad.dtw", "p dtw 2 1\na 1 7\n");

    std::string D = g_dir + "/";

    // exit code 2 on malformed input
    expect(run("tww exact --input " + D + "bad.dtw").exit_code == 2, "bad input gives 2");
    // exit code 1 on usage errors
    expect(run("tww exact").exit_code == 1, "missing required option gives 1");
    // exit code 4 on a size limit
    expect(run("tww exact --input " + D + "tr16.dtw").exit_code == 4,
           "exact beyond the cap gives 4");
    write_file("tr9.dtw", [] {
        std::string s = "p dtw 9 36\n";
        for (int u = 1; u <= 9; ++u)
            for (int v = u + 1; v <= 9; ++v)
                s += "a " + std::to_string(u) + " " + std::to_string(v) + "\n";
        return s;
    }());
    expect(run("tww exact --input " + D + "tr9.dtw").exit_code == 4,
           "9 vertices beyond the default cap gives 4");
    auto raised = run("tww exact --input " + D + "tr9.dtw --max-n 9");
    expect(raised.exit_code == 0 && raised.out.find("\"width\": 0") != std::string::npos,
           "--max-n raises the cap");

    // transitive 16-tournament: contraction branch, width 0
    auto approx = run("tww approx --input " + D + "tr16.dtw --k 2");
    expect(approx.exit_code == 0, "tww approx exits 0");
    expect(approx.out.find("\"witness\": \"contraction\"") != std::string::npos,
           "transitive input takes the contraction branch");
    expect(approx.out.find("\"width\": 0") != std::string::npos, "contraction width 0");

    // C3: exact branch gives width 1
    auto c3w = run("tww exact --input " + D + "c3.dtw");
    expect(c3w.exit_code == 0 && c3w.out.find("\"width\": 1") != std::string::npos,
           "C3 exact width 1");

    // fo check: 2-domination of C3 is true
    auto foc = run("fo check --formula " + D + "ds2.sexp --input " + D + "c3.dtw");
    expect(foc.exit_code == 0 && foc.out.find("\"value\": true") != std::string::npos,
           "C3 has a dominating pair");

    // obstruct gen/decode roundtrip through files
    auto gen = run("obstruct gen --kind eq --perm " + D + "sigma.perm --extend --emit text");
    expect(gen.exit_code == 0, "obstruct gen exits 0");
    write_file("F.dtw", gen.out);
    auto dec = run("obstruct decode --kind eq --input " + D + "F.dtw --emit text");
    expect(dec.exit_code == 0 && dec.out == "s 5\n3 1 4 5 2\n", "decode returns the permutation");

    // extraction: budget underflow is exit 2 and mentions the budget
    write_file("fam5.fam", "f 5\n1\n2\n3\n4\n5\n");
    write_file("tr5.dtw", [] {
        std::string s = "p dtw 5 10\n";
        for (int u = 1; u <= 5; ++u)
            for (int v = u + 1; v <= 5; ++v)
                s += "a " + std::to_string(u) + " " + std::to_string(v) + "\n";
        return s;
    }());
    auto under = run("extract --input " + D + "tr5.dtw --family " + D +
                     "fam5.fam --k 1 --enforce-budget");
    expect(under.exit_code == 2, "budget underflow gives 2");
    {
        std::ifstream err(g_dir + "/err.txt");
        std::ostringstream ss;
        ss << err.rdbuf();
        expect(ss.str().find("13") != std::string::npos, "underflow message cites budget(1)=13");
    }

    // extraction succeeds without enforcement, k = 0
    auto ex0 = run("extract --input " + D + "tr5.dtw --family " + D + "fam5.fam --k 0");
    expect(ex0.exit_code == 0, "best-effort extraction exits 0");

    // grid pipeline on transitive input stops at the rank-division stage
    auto pipe = run("grid-pipeline --input " + D + "tr16.dtw --k 2");
    expect(pipe.exit_code == 0 &&
               pipe.out.find("\"stage\": \"rank-division\"") != std::string::npos,
           "pipeline reports the failing stage");

    // JSON determinism: identical runs give byte-identical reports
    // (timing aside)
    auto r1 = run("tww approx --input " + D + "tr16.dtw --k 2 --seed 7");
    auto r2 = run("tww approx --input " + D + "tr16.dtw --k 2 --seed 7");
    expect(strip_timing(r1.out) == strip_timing(r2.out), "reports are deterministic");

    // matrix and permutation utilities
    write_file("m.mat", "m 4 4\n1000\n0100\n0010\n0001\n");
    auto rd = run("matrix rankdiv --input " + D + "m.mat --k 2");
    expect(rd.exit_code == 0 && rd.out.find("\"status\": \"not-found\"") != std::string::npos,
           "identity matrix has no rank-2 division");
    auto mg = run("matrix grid --input " + D + "m.mat --k 2");
    expect(mg.exit_code == 0 && mg.out.find("\"found\": false") != std::string::npos,
           "identity matrix has no 2-grid");
    write_file("tau.perm", "s 3\n2 3 1\n");
    auto pat = run("perm pattern --sigma " + D + "sigma.perm --tau " + D + "tau.perm");
    expect(pat.exit_code == 0 && pat.out.find("\"found\": true") != std::string::npos,
           "pattern 231 found in 31452");
    write_file("g9.perm", "s 9\n1 4 7 2 5 8 3 6 9\n");
    auto pg = run("perm grid --sigma " + D + "g9.perm");
    expect(pg.exit_code == 0 && pg.out.find("\"max_grid\": 3") != std::string::npos,
           "grid construction on 9 elements has max_grid 3");

    // bst build then check through files
    auto bstb = run("bst build --input " + D + "tr5.dtw --bst median --emit text");
    expect(bstb.exit_code == 0, "bst build exits 0");
    write_file("tr5.bst", bstb.out);
    auto bstc = run("bst check --input " + D + "tr5.dtw --bst-file " + D + "tr5.bst");
    expect(bstc.exit_code == 0 && bstc.out.find("\"ok\": true") != std::string::npos,
           "built tree validates");

    // obstruct enumerate
    auto en = run("obstruct enumerate --kind le --max-m 3");
    expect(en.exit_code == 0 && en.out.find("\"count_distinct\": 6") != std::string::npos &&
               en.out.find("\"all_rigid\": true") != std::string::npos,
           "family enumeration counts");

    if (failures) {
        std::cerr << failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
