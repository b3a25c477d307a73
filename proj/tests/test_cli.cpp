#include "pdextremal/serialize.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace pdextremal;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + PDEXTREMAL_CLI_PATH + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("pdextremal_cli_" + name)).string();
}

Rational R(long long n, long long d = 1) { return Rational(n, d); }

}  // namespace

TEST_CASE("bounds at ell = 2 and 3/2") {
    const Run two = run("bounds --ell 2");
    REQUIRE(two.code == 0);
    const BoundReport r = json::parse(two.out).get<BoundReport>();
    CHECK(r == bound_report(R(2)));
    CHECK(r.upper == R(5));
    const Run half = run("bounds --ell 3/2 --format csv");
    REQUIRE(half.code == 0);
    CHECK(lines(half.out) == std::vector<std::string>{bound_csv_header(), "3/2,3,3,4,4,3,1,"});
    const Run dec = run("bounds --ell 1.5");
    CHECK(json::parse(dec.out).get<BoundReport>() == bound_report(R(3, 2)));
    const Run table = run("bounds --ell 5/4 --format table");
    CHECK(table.code == 0);
    CHECK(table.out.find("approx") != std::string::npos);
}

TEST_CASE("parse and domain errors exit with 2") {
    CHECK(run("bounds --ell 0").code == 2);
    CHECK(run("bounds --ell abc").code == 2);
    CHECK(run("bounds").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("bounds --ell 2 --format xml").code == 2);
    CHECK(run("certify nothing").code == 2);
    CHECK(run("sweep --from 2 --to 1 --step 1").code == 2);
    CHECK(run("bounds --ell 2", "PDEXTREMAL_SEED=banana").code == 2);
}

TEST_CASE("sweep writes a monotone CSV with integer flags") {
    const std::string path = temp_path("sweep.csv");
    const Run r = run("sweep --from 1 --to 5 --step 1/4 --output " + path);
    REQUIRE(r.code == 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto rows = lines(ss.str());
    REQUIRE(rows.size() == 18);
    CHECK(rows[0] == bound_csv_header(true));
    const auto reports = bound_sweep(R(1), R(5), R(1, 4));
    Rational prev_upper;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CHECK(rows[i + 1] == bound_csv_row(reports[i], true));
        CHECK(*reports[i].upper >= prev_upper);
        prev_upper = *reports[i].upper;
        if ((reports[i].ell * R(2)).denominator() == 1) CHECK(*reports[i].upper == R(*reports[i].upper_simple));
    }
    CHECK(rows[5].rfind("2,", 0) == 0);
    CHECK(rows[5] == bound_csv_row(bound_report(R(2)), true));
    std::filesystem::remove(path);
    CHECK(run("sweep --from 1 --to 2 --step 1 --output /nonexistent-dir/x.csv").code == 3);
}

TEST_CASE("witness subcommands") {
    const Run l1 = run("witness lemma1 --k 1 --eps 1/10");
    REQUIRE(l1.code == 0);
    const json j1 = json::parse(l1.out);
    CHECK(j1["g_ratio"].get<double>() >= 2.8);
    CHECK(j1["certified_pd"].get<bool>());
    CHECK(j1["certified_nonneg"].get<bool>());

    const Run l2 = run("witness lemma2 --ell 2 --a 1");
    REQUIRE(l2.code == 0);
    const auto cert = json::parse(l2.out).get<MajorizationCertificate>();
    CHECK(cert.holds);
    CHECK(cert.window_lo == R(1));
    CHECK(cert.window_hi == R(5));
    CHECK(cert.k == 4);
    CHECK(cert.p == R(1));
    CHECK(pl_le(cert.lhs, cert.rhs).holds);
    CHECK(run("witness lemma2 --ell 2 --a 1 --p 1/2").code == 0);

    const Run bog = run("witness bogachev");
    REQUIRE(bog.code == 0);
    const auto rep = json::parse(bog.out).get<CounterexampleReport>();
    CHECK(rep.found);
    CHECK(rep.gap > R(0));
    CHECK(integrate_pl(rep.f, rep.a - R(1), rep.a + R(1)) - integrate_pl(rep.f, R(-1), R(1)) == rep.gap);

    CHECK(run("witness lemma1 --k 1 --eps 1/10 --n-cap 10").code == 4);
    CHECK(run("witness lemma1 --k 1 --eps 2").code == 2);
}

TEST_CASE("solve subcommands") {
    const std::string cert_path = temp_path("cert.json");
    const Run g = run("solve gamma --ell 2 --certificate " + cert_path);
    REQUIRE(g.code == 0);
    const json gj = json::parse(g.out);
    const LPResult r = gj.get<LPResult>();
    CHECK(r.A_opt.to_double() <= 5 + 1e-6);
    CHECK(r.independent_check);
    CHECK(gj["closed_form_upper"] == "5");
    CHECK(gj["primal_estimate"].get<double>() <= r.A_opt.to_double() + 1e-6);
    std::ifstream in(cert_path);
    const json cert = json::parse(in);
    CHECK(recheck_lp_certificate(cert).valid);
    std::filesystem::remove(cert_path);

    const Run s = run("solve sigma --ell 4 --a-grid 0:8:17");
    REQUIRE(s.code == 0);
    const json sj = json::parse(s.out);
    const SigmaSup sup = sj.get<SigmaSup>();
    CHECK(sup.per_a.size() == 17);
    double mx = 0;
    for (const auto& p : sup.per_a) mx = std::max(mx, p.bound_sigma.to_double());
    CHECK(sup.bound == mx);
    const Run st = run("solve sigma --ell 4 --a-grid 0:8:17 --format table");
    CHECK(st.out.find("per_a.16.a") != std::string::npos);

    CHECK(run("solve sigma --ell 1 --a 10 --no-paper-shifts --shifts 1").code == 5);
    CHECK(run("solve gamma --ell 2 --max-pivots 1").code == 6);
    CHECK(run("solve gamma --ell 2 --arithmetic floating").code == 0);
}

TEST_CASE("primal output is byte-identical for a fixed seed") {
    const Run a = run("solve primal --ell 3/2 --harmonics 8 --seed 7");
    const Run b = run("solve primal --ell 3/2 --harmonics 8 --seed 7");
    const Run e = run("solve primal --ell 3/2 --harmonics 8", "PDEXTREMAL_SEED=7");
    const Run s = run("solve primal --ell 3/2 --harmonics 8 --seed 7 --serial");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == e.out);
    CHECK(a.out == s.out);
    const PrimalResult p = json::parse(a.out).get<PrimalResult>();
    CHECK(p.lower_estimate == p.per_start[static_cast<std::size_t>(p.best_start)]);
    CHECK(run("solve primal --ell 3/2 --seed 8").out != a.out);
}

TEST_CASE("certify named functions and sample files") {
    CHECK(run("certify triangle").code == 0);
    CHECK(run("certify gaussian").code == 0);
    CHECK(run("certify cospow:3/2:4").code == 0);
    const Run ind = run("certify indicator:-1:1 --step 0.3 --lags 64");
    CHECK(ind.code == 1);
    CHECK_FALSE(json::parse(ind.out)["positive_definite"]["passed"].get<bool>());
    const Run h = run("certify H:1:4:1");
    CHECK(h.code == 1);
    const json hj = json::parse(h.out);
    CHECK(hj["positive_definite"]["passed"].get<bool>());
    CHECK_FALSE(hj["nonnegative"]["passed"].get<bool>());

    const std::string path = temp_path("samples.csv");
    {
        std::ofstream out(path);
        out.precision(17);
        out << "x,f\n";
        for (int i = -8000; i <= 8000; ++i) {
            const double x = i * 1e-3;
            out << x << ',' << std::exp(-x * x) << '\n';
        }
    }
    CHECK(run("certify --csv " + path).code == 0);
    std::filesystem::remove(path);
    CHECK(run("certify").code == 2);
    CHECK(run("certify triangle --csv x.csv").code == 2);
}
