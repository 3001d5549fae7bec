// CLI contract tests: every command's report verifies back through the
// `verify` subcommand, and reports are byte-identical across runs apart
// from the timing field.
//
// usage: test_cli <path-to-halg-cli> <fixtures-dir>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

int g_failures = 0;

void expect(bool cond, const std::string& what)
{
    if (!cond) {
        std::cout << "FAIL  " << what << "\n";
        ++g_failures;
    } else {
        std::cout << "ok    " << what << "\n";
    }
}

int run(const std::string& cmd)
{
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

json slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return json::parse(ss.str());
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 3) {
        std::cerr << "usage: test_cli <halg-cli> <fixtures-dir>\n";
        return 2;
    }
    std::string cli = argv[1], fx = argv[2];
    std::string tmp = "/tmp/halg_cli_test.json";
    std::string tmp2 = "/tmp/halg_cli_test2.json";

    std::vector<std::string> cmds = {
        "resolve --module " + fx + "/z2plusz.json --steps 4",
        "resolve --module " + fx + "/a2_s1.json --steps 4",
        "ext --module " + fx + "/z2.json --i 1",
        "transpose --module " + fx + "/z2.json",
        "dual --module " + fx + "/a2_s1.json",
        "grade --module " + fx + "/z2.json --cap 3",
        "tf-level --module " + fx + "/z2plusz.json --cap 4",
        "lemma21 --module " + fx + "/z6.json",
        "lemma21 --module " + fx + "/f2x2_simple.json",
        "theorem --module " + fx + "/z2plusz.json --d 0",
        "theorem --module " + fx + "/f2x2_simple.json --d 2",
        "chain --module " + fx + "/z2plusz.json --k 2",
        "eg --module " + fx + "/a2_s1.json --d 0",
        "approx --module " + fx + "/f2x2_simple_right.json --k 3 --test-h " + fx +
            "/f2x2_simple_right.json",
        "classify --ring " + fx + "/a2_f2.json --k 2",
        "classify --ring " + fx + "/semisimple2.json --k 3",
        "spotcheck --ring " + fx + "/f3x3.json --k 2",
    };

    for (const auto& c : cmds) {
        int rc = run(cli + " " + c + " > " + tmp + " 2>/dev/null");
        expect(rc == 0, c + " [exit 0]");
        int vr = run(cli + " verify --certificate " + tmp + " > " + tmp2 + " 2>/dev/null");
        expect(vr == 0, c + " [verify exit 0]");
        json v = slurp(tmp2);
        expect(v["result"]["matches_embedded"].get<bool>(), c + " [byte-identical checks]");
        // determinism: the canonical digest is reproducible
        int rc2 = run(cli + " " + c + " > " + tmp2 + " 2>/dev/null");
        expect(rc2 == 0, c + " [rerun]");
        json r1 = slurp(tmp), r2 = slurp(tmp2);
        expect(r1["digest"] == r2["digest"], c + " [deterministic digest]");
        r1.erase("timing_ms");
        r2.erase("timing_ms");
        expect(r1 == r2, c + " [byte-identical modulo timing]");
    }

    // right-side module files round-trip: dual of a right module is left
    {
        int rc = run(cli + " dual --module " + fx + "/z2_right.json > " + tmp + " 2>/dev/null");
        expect(rc == 0, "dual of a right module [exit 0]");
        json r = slurp(tmp);
        expect(r["certificate"]["value"]["side"] == "left",
               "dual of a right module lands on the left");
    }

    // approx with a test module on the wrong side is rejected as malformed
    {
        int rc = run(cli + " approx --module " + fx + "/f2x2_simple_right.json --k 2 --test-h " +
                     fx + "/f2x2_simple.json 2>/dev/null >/dev/null");
        expect(rc == 3, "mixed-side test module rejected [exit 3]");
    }

    std::cout << (g_failures == 0 ? "CLI CONTRACT OK" : "CLI CONTRACT FAILED") << "\n";
    return g_failures == 0 ? 0 : 1;
}
