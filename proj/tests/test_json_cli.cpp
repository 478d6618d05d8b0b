#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include "plie/json_io.hpp"
#include "plie/series.hpp"

using namespace plie;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(PLIE_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("JSON grammar round trips") {
    JsonDefaults d{5, 24, "heis"};
    ZpInt a(5, 24, 123456);
    CHECK(parse_zp(zp_json(a), d) == a);
    CHECK(parse_zp("\"42\"", d).residue() == 42);

    QpScalar t = QpScalar::from_zp(ZpInt(5, 12, 75));
    QpScalar back = parse_qp(qp_json(t), JsonDefaults{5, 12, ""});
    CHECK(back.valuation() == t.valuation());
    CHECK(back.unit() == t.unit());
    CHECK(parse_qp(qp_json(QpScalar::zero(5)), d).is_zero());

    ChartGroup heis = ChartGroup::heisenberg(5);
    Rng rng(70);
    ChartVector v = heis.random(24, rng, 1);
    CHECK(parse_chart(chart_json(v, "heis"), d) == v);

    // defaults fill omitted fields; contradictions are usage errors
    ChartVector five = parse_chart("{\"coords\":[\"5\",\"0\",\"0\"]}", d);
    CHECK(five.prime() == 5);
    CHECK(five.precision() == 24);
    CHECK_THROWS_AS(parse_chart("{\"p\":7,\"coords\":[\"5\"]}", d), UsageError);
    CHECK_THROWS_AS(parse_chart("{\"group\":\"mult\",\"coords\":[\"5\"]}", d), UsageError);
    CHECK_THROWS_AS(parse_chart("not json", d), UsageError);
}

TEST_CASE("cli: log command against the series oracle") {
    RunResult r = run_cli("log --group mult --p 5 --prec 20 --x '{\"coords\":[\"5\"]}'");
    CHECK(r.exit_code == 0);
    // the result must agree with the Mercator sum mod p^10
    ZpInt want = log_series(ZpInt::from_long(5, 20, 5), 10);
    JsonDefaults d{5, 0, "mult"};
    auto pos = r.out.find("\"result\":");
    REQUIRE(pos != std::string::npos);
    // the result object is the last member of the document
    std::string inner = r.out.substr(pos + 9);
    while (!inner.empty() && (inner.back() == '\n' || inner.back() == '}')) inner.pop_back();
    ChartVector got = parse_chart(inner + "}", d);
    CHECK(truncate(got.coord(0), 10) == want);
}

TEST_CASE("cli: deterministic bytes, exit codes") {
    const std::string audit = "audit-filtration --group heis --p 5 --prec 24 --samples 50 --seed 9";
    RunResult a = run_cli(audit);
    RunResult b = run_cli(audit);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);

    // missing required option
    CHECK(run_cli("log --group mult --p 5").exit_code == 3);
    // composite p
    CHECK(run_cli("log --group mult --p 9 --x '{\"coords\":[\"3\"]}'").exit_code == 3);
    // out-of-domain root (norm exponent 1)
    CHECK(run_cli("root --group mult --p 5 --x '{\"coords\":[\"5\"]}'").exit_code == 1);
    // unknown subcommand
    CHECK(run_cli("frobnicate").exit_code == 3);
}

TEST_CASE("cli: pow provenance block and tsv tables") {
    RunResult r = run_cli("pow --group mult --p 5 --prec 24 --x '{\"coords\":[\"5\"]}' "
                          "--z '{\"residue\":\"2\"}'");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"provenance\"") != std::string::npos);
    CHECK(r.out.find("\"35\"") != std::string::npos);

    RunResult t = run_cli("log --group mult --p 5 --prec 24 --x '{\"coords\":[\"5\"]}' --table");
    CHECK(t.exit_code == 0);
    CHECK(t.out.find('\t') != std::string::npos);

    RunResult c = run_cli("probe curve --p 5 --prec 24 --m-max 3 --samples 10 --table");
    CHECK(c.exit_code == 0);
    CHECK(c.out.rfind("1\t1\t0", 0) == 0);
}

TEST_CASE("cli: lazard certificate emission") {
    RunResult r = run_cli("lazard --group heis --p 5 --prec 24 --condition l3 --samples 10 --seed 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"verdict\":\"pass\"") != std::string::npos);
    CHECK(r.out.find("\"replay\"") != std::string::npos);
}

TEST_CASE("cli: quick scaled selftest exits 0") {
    RunResult r = run_cli("selftest --p 5 --prec 24 --seed 7 --scale 0.02");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("criterion 11: PASS") != std::string::npos);
}
