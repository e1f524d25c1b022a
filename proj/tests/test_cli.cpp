#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "morse_gpe/cli.hpp"

namespace fs = std::filesystem;
using morse_gpe::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& tag) {
    const auto dir = fs::temp_directory_path() / ("morse_gpe_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
    std::ofstream f(p, std::ios::binary);
    f << s;
}

// Guards MORSE_GPE_OUT for one test case.
struct EnvOut {
    explicit EnvOut(const char* value) {
        if (value) ::setenv("MORSE_GPE_OUT", value, 1);
        else ::unsetenv("MORSE_GPE_OUT");
    }
    ~EnvOut() { ::unsetenv("MORSE_GPE_OUT"); }
};

}  // namespace

TEST_CASE("value lists") {
    using morse_gpe::cli::parse_values;
    CHECK(parse_values("0.1") == std::vector<double>{0.1});
    CHECK(parse_values("2,3,5") == std::vector<double>{2.0, 3.0, 5.0});
    const auto r = parse_values("0.1:0.14:0.02");
    REQUIRE(r.size() == 3);
    CHECK(r.back() == doctest::Approx(0.14));
    CHECK_THROWS(parse_values("1:0:0.1"));
    CHECK_THROWS(parse_values("a,b"));
}

TEST_CASE("exit codes") {
    EnvOut env(nullptr);
    CHECK(call({"solve", "--k", "3", "--gprime", "0.1"}).code == 0);
    CHECK(call({"solve", "--k", "1.5", "--gprime", "0.1"}).code == 2);
    CHECK(call({"solve", "--k", "3", "--gprime", "-1"}).code == 2);
    CHECK(call({"solve", "--k", "3", "--gprime", "0.1", "--mode", "exact"}).code == 2);
    CHECK(call({"bogus"}).code == 2);
    CHECK(call({"oracle-grid", "--k", "3", "--resolution", "10"}).code == 2);
    CHECK(call({"report", "--k", "9"}).code == 2);
    CHECK(call({"oracle-pde", "--k", "3", "--gprime", "0.1", "--max-iterations", "3"}).code == 3);
}

TEST_CASE("help for every subcommand") {
    for (const char* sub : {"potential", "solve", "critical", "sweep-g", "sweep-k", "density",
                            "oracle-grid", "oracle-pde", "report"}) {
        CAPTURE(sub);
        const auto r = call({sub, "--help"});
        CHECK(r.code == 0);
        CHECK((r.out + r.err).find("Usage") != std::string::npos);
    }
}

TEST_CASE("sweep-g header and empty cells") {
    EnvOut env(nullptr);
    const auto r = call({"sweep-g", "--k", "3", "--gprime", "0.1,1.0"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row1, row2;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(header == "gprime,alpha1,beta1,E1,alpha2,beta2,E2");
    CHECK(row1.rfind("0.1,1.21281517934", 0) == 0);
    CHECK(row2 == "1,,,,,,");
}

TEST_CASE("round trip through --from-file is byte-identical") {
    EnvOut env(nullptr);
    const auto dir = fresh_dir("roundtrip");
    const std::vector<std::vector<std::string>> cmds = {
        {"potential", "--k", "3", "--u-range", "-2:5:0.5"},
        {"solve", "--k", "3", "--gprime", "0.1"},
        {"critical", "--k", "2,3"},
        {"sweep-g", "--k", "3", "--gprime", "0.1:0.16:0.02"},
        {"sweep-k", "--k", "2,3"},
        {"density", "--k", "3", "--gprime", "0.1", "--y-range", "0.5:10:0.5"},
        {"oracle-grid", "--k", "3", "--gprime", "0.1", "--resolution", "600"},
        {"report", "--format", "json"},
        {"report", "--format", "csv"},
    };
    int n = 0;
    for (auto base : cmds) {
        for (const char* fmt : {"csv", "json"}) {
            auto args = base;
            if (base[0] == "report") {
                if (fmt != std::string("csv")) continue;
            } else {
                args.insert(args.end(), {"--format", fmt});
            }
            CAPTURE(args[0]);
            CAPTURE(fmt);
            const auto first = call(args);
            REQUIRE(first.code == 0);
            const auto file = dir / ("emitted_" + std::to_string(n++));
            spit(file, first.out);
            const auto again = call({base[0], "--from-file", file.string()});
            REQUIRE(again.code == 0);
            CHECK(again.out == first.out);
        }
    }
}

TEST_CASE("output directory from flag and from environment") {
    const auto cwd = fs::current_path();
    const auto scratch = fresh_dir("cwd");
    fs::current_path(scratch);

    const auto flag_dir = fresh_dir("flag");
    {
        EnvOut env(nullptr);
        const auto r = call({"sweep-g", "--k", "3", "--gprime", "0.1", "--output-path", flag_dir.string()});
        CHECK(r.code == 0);
        CHECK(r.out.empty());
        CHECK(fs::exists(flag_dir / "sweep-g.csv"));
        CHECK(r.err.find("wrote") != std::string::npos);
    }

    const auto env_dir = fresh_dir("env");
    {
        EnvOut env(env_dir.string().c_str());
        CHECK(call({"critical", "--k", "3"}).code == 0);
        CHECK(fs::exists(env_dir / "critical.json"));
        CHECK(call({"report"}).code == 0);
        CHECK(fs::exists(env_dir / "report.md"));
        CHECK(fs::exists(env_dir / "report.json"));
        // the flag wins over the environment
        CHECK(call({"solve", "--k", "3", "--gprime", "0.1", "--output-path", flag_dir.string()}).code == 0);
        CHECK(fs::exists(flag_dir / "solve.json"));
        CHECK_FALSE(fs::exists(env_dir / "solve.json"));
    }

    CHECK(fs::is_empty(scratch));
    int files = 0;
    for (const auto& e : fs::directory_iterator(env_dir)) files += e.is_regular_file();
    CHECK(files == 3);
    fs::current_path(cwd);
}

TEST_CASE("report content") {
    EnvOut env(nullptr);
    const auto r = call({"report"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("prefactor") != std::string::npos);
    CHECK(r.out.find("0.463") != std::string::npos);
}
