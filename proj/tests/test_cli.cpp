#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(STEPWELL_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

TEST_CASE("spectrum: counts for the capture sequence") {
    auto r = run("spectrum lin --beta0 2.7");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0].rfind("# stepwell spectrum", 0) == 0);
    CHECK(lines[1] == "n,beta,energy");
    CHECK(lines.size() - 2 == 1);

    auto r2 = run("spectrum lin --beta0 4.0");
    CHECK(lines_of(r2.out).size() - 2 == 2);
}

TEST_CASE("spectrum: empty spectrum still emits the header") {
    auto r = run("spectrum lin --beta0 0.1");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1] == "n,beta,energy");
}

TEST_CASE("spectrum --curves emits the graphical construction") {
    auto r = run("spectrum lin --beta0 6 --curves");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() > 100);
    CHECK(lines[1] == "beta,lhs,rhs");
    // rhs decreases from sqrt(beta0) toward zero
    auto first = split_csv(lines[2]);
    auto last = split_csv(lines.back());
    CHECK(std::stod(first[2]) > std::stod(last[2]));
}

TEST_CASE("delay: threshold rows flagged, not NaN") {
    auto r = run("delay lin --beta0 2.1 --sweep 2.0:3.0:5");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2 + 5);
    CHECK(lines[1] == "beta,tau,tau_classical,flag");
    auto row0 = split_csv(lines[2]);
    CHECK(row0[3] == "threshold");
    CHECK(row0[1].empty());
    auto row4 = split_csv(lines[6]);
    CHECK(row4[3] == "ok");
    CHECK(row4[0].find("nan") == std::string::npos);
    CHECK(std::stod(row4[2]) == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("round trip: physical and dimensionless params give identical sweeps") {
    // alpha = 1 physical set: M = 0.5, m = hbar = 1, U0 = beta0/2
    auto a = run("delay lin --beta0 2.1 --sweep 2.2:12:40");
    auto b = run("delay lin --M 0.5 --U0 1.05 --mass 1 --hbar 1 --sweep 2.2:12:40");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    auto la = lines_of(a.out), lb = lines_of(b.out);
    REQUIRE(la.size() == lb.size());
    for (std::size_t i = 1; i < la.size(); ++i) CHECK(la[i] == lb[i]); // bit-identical rows
}

TEST_CASE("exp delay sweep runs and decays toward the envelope") {
    auto r = run("delay exp --beta0 24 --alpha 1 --sweep 24.5:80:60");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 62);
    CHECK(lines[0].find("alpha=1") != std::string::npos);
}

TEST_CASE("resonances subcommand") {
    auto r = run("resonances lin --beta0 1.5 --beta-max 15");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() >= 4);
    CHECK(lines[1] == "beta_center,eta_n,height,width");
    // first resonance near eta_2 = 3.2482
    auto row = split_csv(lines[2]);
    CHECK(std::stod(row[1]) == doctest::Approx(3.2482).epsilon(1e-3));
}

TEST_CASE("wells subcommand alternates parity") {
    auto r = run("wells lin --n 6");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2 + 6);
    CHECK(lines[1] == "n,parity,beta,energy");
    for (int i = 0; i < 6; ++i) {
        auto row = split_csv(lines[2 + i]);
        CHECK(row[1] == (i % 2 == 0 ? "even" : "odd"));
    }
}

TEST_CASE("specfun table has value, method, and error estimate") {
    auto r = run("specfun --fn ai --sweep -12:5:18");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2 + 18);
    CHECK(lines[1] == "x,value,method,err_estimate");
    bool saw_series = false, saw_neg = false;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        auto row = split_csv(lines[i]);
        if (row[2] == "series") saw_series = true;
        if (row[2] == "asymptotic_negative") saw_neg = true;
    }
    CHECK(saw_series);
    CHECK(saw_neg);
}

TEST_CASE("config errors exit with code 2") {
    CHECK(run("delay lin --beta0 2.1").exit_code == 2);                    // missing sweep
    CHECK(run("delay lin --beta0 2.1 --sweep 5:2:10").exit_code == 2);     // min > max
    CHECK(run("delay lin --beta0 2 --M 1 --sweep 3:4:5").exit_code == 2);  // both param sets
    CHECK(run("spectrum bogus --beta0 2").exit_code == 2);
    CHECK(run("spectrum exp --beta0 0.5 --alpha 1").exit_code == 2);       // beta0 < alpha^2
}

TEST_CASE("json format emits one document") {
    auto r = run("wells lin --n 3 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"rows\"") != std::string::npos);
    CHECK(r.out.find("\"meta\"") != std::string::npos);
}

TEST_CASE("--out writes a file") {
    const std::string path = "/tmp/stepwell_test_out.csv";
    std::remove(path.c_str());
    auto r = run("wells lin --n 3 --out " + path);
    CHECK(r.exit_code == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string first;
    std::getline(f, first);
    CHECK(first.rfind("# stepwell wells", 0) == 0);
    std::remove(path.c_str());
}

TEST_CASE("validate subcommand compares Numerov against analytic levels") {
    auto r = run("validate --levels 3");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2 + 6);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        auto row = split_csv(lines[i]);
        CHECK(std::stod(row[5]) < 1e-6);
    }
}

TEST_CASE("packet subcommand emits trace plus JSON summary") {
    auto r = run("packet lin --beta0 4.5 --beta-peak 8 --out /tmp/stepwell_packet.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("tau_measured") != std::string::npos);
    CHECK(r.out.find("tau_predicted") != std::string::npos);
    std::ifstream f("/tmp/stepwell_packet.csv");
    REQUIRE(f.good());
    std::string first, second;
    std::getline(f, first);
    std::getline(f, second);
    CHECK(second == "t,x_centroid");
    std::remove("/tmp/stepwell_packet.csv");
}
