#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(WKAM_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string instance(const std::string& name) { return std::string(WKAM_INSTANCE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, Critical) {
    const auto r = run("critical --in " + instance("t2.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "\"alpha0\": \"-1/2\"")) << r.out;
    EXPECT_TRUE(has(r.out, "\"a\"") && has(r.out, "\"b\""));
    EXPECT_TRUE(has(run("critical --gen constant:3:5").out, "\"alpha0\": \"-5\""));
}

TEST(Cli, AubryAndBarrier) {
    const auto a = run("aubry --in " + instance("t3.json"));
    EXPECT_EQ(a.code, 0);
    EXPECT_TRUE(has(a.out, "\"vertices\"")) << a.out;
    EXPECT_FALSE(has(a.out, "\"vertices\": [\n    \"a\",\n    \"b\",\n    \"c\""));
    const auto b = run("barrier --in " + instance("t3.json"));
    EXPECT_TRUE(has(b.out, "\"18\""));
    const auto csv = run("barrier --gen constant:2:1 --format csv");
    EXPECT_EQ(csv.code, 0);
    EXPECT_EQ(csv.out.rfind("table,row,column,value\n", 0), 0u) << csv.out;
}

TEST(Cli, SubsolutionCheck) {
    const auto r = run("subsolution --check --in " + instance("t3.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "\"ok\": true")) << r.out;
}

TEST(Cli, VerifyExitCodes) {
    EXPECT_EQ(run("verify --in " + instance("t2.json")).code, 0);
    EXPECT_EQ(run("verify --gen random:5:3:-5:5 --seed 4").code, 0);
    const auto bad = run("verify --in " + instance("t2_corrupted.json"));
    EXPECT_EQ(bad.code, 3);
    EXPECT_TRUE(has(bad.out, "\"barrier_source\": \"instance\""));
    EXPECT_EQ(run("verify --gen constant:11:1").code, 2);
    const auto csv = run("verify --in " + instance("t2.json") + " --format csv");
    EXPECT_EQ(csv.out.rfind("check,pass,witness\n", 0), 0u);
}

TEST(Cli, InputErrors) {
    EXPECT_EQ(run("critical --in " + instance("missing.json")).code, 2);
    EXPECT_EQ(run("critical").code, 2);
    EXPECT_EQ(run("critical --in " + instance("t2.json") + " --gen constant:2:1").code, 2);
    EXPECT_EQ(run("critical --gen bogus:1").code, 2);
    EXPECT_EQ(run("critical --gen constant:2:1 --format xml").code, 2);
    EXPECT_EQ(run("nosuchcommand").code, 2);
    EXPECT_EQ(run("plotdata --gen constant:2:1").code, 2);
}

TEST(Cli, PlotData) {
    const auto r = run("plotdata --gen fk:8:1:quad");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("point,V,F,f,h_xx,in_aubry,h_x0\n", 0), 0u);
    EXPECT_TRUE(has(r.out, "\nq0,0,0,0,0,1,0\n")) << r.out;
    std::size_t flagged = 0;
    std::istringstream lines(r.out);
    for (std::string line; std::getline(lines, line);)
    {
        std::vector<std::string> cells;
        std::istringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
        if (cells.size() == 7 && cells[5] == "1") ++flagged;
    }
    EXPECT_EQ(flagged, 1u);
}

TEST(Cli, OutputIsDeterministic) {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string p1 = (dir / "wkam_cli_1.json").string(), p2 = (dir / "wkam_cli_2.json").string();
    ASSERT_EQ(run("potential --gen random:6:17:-5:5 --out " + p1).code, 0);
    ASSERT_EQ(run("potential --gen random:6:17:-5:5 --out " + p2).code, 0);
    EXPECT_FALSE(slurp(p1).empty());
    EXPECT_EQ(slurp(p1), slurp(p2));
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}

TEST(Cli, FloatMode) {
    const auto r = run("critical --gen random:3:5:-5:5 --mode float");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "\"alpha0\": ")) << r.out;
    EXPECT_FALSE(has(r.out, "\"alpha0\": \""));
}
