#include "esapi_model/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace esapi_model;
namespace cli = esapi_model::cli;

namespace {

int scenario(const std::string& text, std::size_t bank, std::string* out_text = nullptr,
             std::string* err_text = nullptr)
{
    std::istringstream in(text);
    std::ostringstream out, err;
    const int rc = cli::run_scenario(in, bank, out, err);
    if (out_text)
        *out_text = out.str();
    if (err_text)
        *err_text = err.str();
    return rc;
}

} // namespace

TEST(Scenario, LookupAfterCreate)
{
    EXPECT_EQ(scenario(R"({"op":"get_node","handle":5}
{"op":"expect_code","code":1611}
{"op":"get_node","handle":5}
{"op":"expect_code","code":616}
)",
                       64),
              cli::kExitOk);
}

TEST(Scenario, Exhaustion)
{
    EXPECT_EQ(scenario(R"({"op":"get_node","handle":5}
{"op":"expect_code","code":1611}
{"op":"snapshot","label":"s"}
{"op":"get_node","handle":7}
{"op":"expect_code","code":833}
{"op":"assert_unchanged","label":"s","strict":true}
)",
                       1),
              cli::kExitOk);
}

TEST(Scenario, FailedExpectationReportsLine)
{
    std::string out;
    EXPECT_EQ(scenario("{\"op\":\"get_node\",\"handle\":5}\n{\"op\":\"expect_code\",\"code\":616}\n", 4,
                       &out),
              cli::kExitViolation);
    EXPECT_NE(out.find("line 2: FAIL"), std::string::npos);

    EXPECT_EQ(scenario("{\"op\":\"expect_list\",\"handles\":[1]}\n", 4), cli::kExitViolation);
    EXPECT_EQ(scenario("{\"op\":\"assert_unchanged\",\"label\":\"x\"}\n", 4), cli::kExitViolation);
}

TEST(Scenario, ParseErrorsExitTwoWithLineNumber)
{
    std::string err;
    EXPECT_EQ(scenario("# comment\n\n{\"op\":\"get_node\",\"handle\":5}\n{not json\n", 4, nullptr, &err),
              cli::kExitUsage);
    EXPECT_NE(err.find("line 4"), std::string::npos);

    EXPECT_EQ(scenario("{\"op\":\"frobnicate\"}\n", 4), cli::kExitUsage);
    EXPECT_EQ(scenario("{\"op\":\"get_node\",\"handle\":-1}\n", 4), cli::kExitUsage);
    EXPECT_EQ(scenario("{\"op\":\"get_node\",\"handle\":4294967296}\n", 4), cli::kExitUsage);
    EXPECT_EQ(scenario("{\"op\":\"expect_list\",\"handles\":3}\n", 4), cli::kExitUsage);
    // nothing runs when a later line fails to parse
    std::string out;
    EXPECT_EQ(scenario("{\"op\":\"get_node\",\"handle\":5}\n[]\n", 4, &out), cli::kExitUsage);
    EXPECT_TRUE(out.empty());
}

TEST(Scenario, TranscriptIsDeterministic)
{
    const std::string text = "{\"op\":\"get_node\",\"handle\":5}\n{\"op\":\"create_node\",\"handle\":6}\n"
                             "{\"op\":\"expect_list\",\"handles\":[6,5]}\n";
    std::string a, b;
    EXPECT_EQ(scenario(text, 3, &a), cli::kExitOk);
    EXPECT_EQ(scenario(text, 3, &b), cli::kExitOk);
    EXPECT_EQ(a, b);
}

TEST(Fuzz, DeterministicForFixedSeed)
{
    std::ostringstream sink;
    const auto a = cli::fuzz({500, 9, 16, 0}, sink);
    const auto b = cli::fuzz({500, 9, 16, 0}, sink);
    EXPECT_EQ(a.exit_code, cli::kExitOk);
    EXPECT_EQ(a.histogram, b.histogram);
    EXPECT_EQ(a.list_length, b.list_length);
}

TEST(Fuzz, SmallBankHitsExhaustion)
{
    std::ostringstream sink;
    const auto r = cli::fuzz({100, 1, 2, 8}, sink);
    EXPECT_EQ(r.exit_code, cli::kExitOk);
    EXPECT_GT(r.histogram.count(833), 0u);
    EXPECT_EQ(r.allocated, 2u);
    EXPECT_EQ(r.list_length, 2u);
}

TEST(Fuzz, RejectsZeroOps)
{
    std::ostringstream out, err;
    EXPECT_EQ(cli::run_fuzz({0, 1, 4, 0}, out, err), cli::kExitUsage);
}

TEST(Lemmas, OutputAndGuards)
{
    std::ostringstream out, err;
    EXPECT_EQ(cli::run_lemmas({9, false, 1, ""}, out, err), cli::kExitUsage);
    EXPECT_EQ(cli::run_lemmas({0, false, 1, ""}, out, err), cli::kExitUsage);

    std::ostringstream lines;
    EXPECT_EQ(cli::run_lemmas({1, false, 1, ""}, lines, err), cli::kExitOk);
    std::istringstream in(lines.str());
    std::string name;
    std::uint64_t configs = 0, cex = 0;
    double ms = 0;
    int n = 0;
    while (in >> name >> configs >> cex >> ms) {
        ++n;
        EXPECT_EQ(configs, 5u);
        EXPECT_EQ(cex, 0u);
    }
    EXPECT_EQ(n, 9);

    std::ostringstream mut;
    EXPECT_EQ(cli::run_lemmas({3, true, 1, ""}, mut, err), cli::kExitOk);
}
