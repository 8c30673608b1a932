#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

struct CliRunner {
    std::string binary;
    fs::path dir;

    CliRunner() {
        const char* bin = std::getenv("ZETAK_BIN");
        binary = bin ? bin : "";
        dir = fs::temp_directory_path() / "zetak_cli_test";
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~CliRunner() { fs::remove_all(dir); }

    int run(const std::string& args, const std::string& stdout_name = "stdout.txt") {
        std::string cmd = binary + " --run-ledger " + (dir / "runs.log").string() + " " + args +
                          " > " + (dir / stdout_name).string() + " 2> " +
                          (dir / "stderr.txt").string();
        int rc = std::system(cmd.c_str());
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    }

    std::string slurp(const std::string& name) {
        std::ifstream f(dir / name);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
};

} // namespace

TEST_CASE("command line round trips") {
    CliRunner cli;
    if (cli.binary.empty()) SKIP("ZETAK_BIN not set");

    SECTION("exit codes") {
        REQUIRE(cli.run("coeffs --d 4 --n-max 50 --check-oracle") == 0);
        REQUIRE(cli.run("coeffs --bogus-flag 1") == 1);
        REQUIRE(cli.run("construct --d 2 --N 100") == 1);
        REQUIRE(cli.run("verify --suite no-such-suite") == 1);
        REQUIRE(cli.run("sweep --n-lo 600 --n-hi 500") == 1);
    }

    SECTION("coeffs output matches the library") {
        REQUIRE(cli.run("coeffs --d 5 --n-max 20") == 0);
        auto text = cli.slurp("stdout.txt");
        REQUIRE(text.rfind("n,a\n", 0) == 0);
        REQUIRE(text.find("\n11,4\n") != std::string::npos);
        REQUIRE(text.find("\n13,0\n") != std::string::npos);
    }

    SECTION("byte-identical reruns and cache reuse") {
        std::string out1 = (cli.dir / "a.txt").string();
        std::string out2 = (cli.dir / "b.txt").string();
        REQUIRE(cli.run("--output " + out1 + " construct --d 3 --N 1024") == 0);
        REQUIRE(cli.run("--output " + out2 + " construct --d 3 --N 1024") == 0);
        REQUIRE(cli.slurp("a.txt") == cli.slurp("b.txt"));
        REQUIRE_FALSE(cli.slurp("a.txt").empty());

        std::string cache = (cli.dir / "cache").string();
        std::string out3 = (cli.dir / "c.txt").string();
        std::string out4 = (cli.dir / "d.txt").string();
        REQUIRE(cli.run("--cache-dir " + cache + " --output " + out3 +
                        " galsum --d 3 --N 1024 --alpha 0.5") == 0);
        REQUIRE(cli.run("--cache-dir " + cache + " --output " + out4 +
                        " galsum --d 3 --N 1024 --alpha 0.5") == 0);
        REQUIRE(cli.slurp("c.txt") == cli.slurp("d.txt"));
        bool saw_set = false;
        for (auto& entry : fs::directory_iterator(cache))
            if (entry.path().filename().string().rfind("set_", 0) == 0) saw_set = true;
        REQUIRE(saw_set);
    }

    SECTION("formats") {
        REQUIRE(cli.run("--format csv galsum --d 3 --N 512") == 0);
        auto csv = cli.slurp("stdout.txt");
        REQUIRE(csv.rfind("d,N,m_size", 0) == 0);
        REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 2);

        REQUIRE(cli.run("--format jsonl galsum --d 3 --N 512") == 0);
        auto jsonl = cli.slurp("stdout.txt");
        REQUIRE(jsonl.rfind("{", 0) == 0);
        REQUIRE(jsonl.find("\"beta_empirical\"") != std::string::npos);
    }

    SECTION("config file with flag override") {
        std::ofstream conf(cli.dir / "conf.ini");
        conf << "format = \"csv\"\n# comment\n[galsum]\nd = 3\nN = 256\n";
        conf.close();
        REQUIRE(cli.run("--config " + (cli.dir / "conf.ini").string() + " galsum") == 0);
        auto csv = cli.slurp("stdout.txt");
        REQUIRE(csv.find("3,256,") != std::string::npos);
        // flags override the file
        REQUIRE(cli.run("--config " + (cli.dir / "conf.ini").string() +
                        " --format jsonl galsum") == 0);
        REQUIRE(cli.slurp("stdout.txt").rfind("{", 0) == 0);
    }

    SECTION("verify suites succeed") {
        REQUIRE(cli.run("verify --suite orthogonality --d 12") == 0);
        REQUIRE(cli.run("verify --suite coefficient-oracle --d 6 --n-max 500") == 0);
        REQUIRE(cli.run("verify --suite gcd-identity --d 3 --N 1024 --pairs 200 --seed 5") == 0);
    }

    SECTION("search appends a parseable results ledger") {
        std::string results = (cli.dir / "results.csv").string();
        REQUIRE(cli.run("--format csv search --d 3 --T 1000 --budget 10 --seed 2 --results " +
                        results) == 0);
        auto ledger = cli.slurp("results.csv");
        REQUIRE(ledger.rfind("seed,T,d,budget,t_star", 0) == 0);
        std::istringstream rows(ledger);
        std::string header, row;
        std::getline(rows, header);
        REQUIRE(std::getline(rows, row));
        REQUIRE(row.rfind("2,1000,3,10,", 0) == 0);

        // a horizon whose default construction violates |M| <= N is rejected
        REQUIRE(cli.run("search --d 3 --T 500 --budget 10 --seed 2") == 2);
    }

    SECTION("provenance ledger accumulates") {
        REQUIRE(cli.run("kernel --eta 4 --epsilon 0.05 --T 1000") == 0);
        REQUIRE(cli.run("kernel --eta 4 --epsilon 0.05 --T 1000") == 0);
        auto log = cli.slurp("runs.log");
        REQUIRE(std::count(log.begin(), log.end(), '\n') >= 2);
        REQUIRE(log.find("command=kernel") != std::string::npos);
        REQUIRE(log.find("version=") != std::string::npos);
    }
}
