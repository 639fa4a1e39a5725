#pragma once

// Drivers behind the esapi-model command line: lemma suite, scenario replay
// and contract fuzzing. Each returns the process exit status:
//   0 pass, 1 contract or expectation violation, 2 usage or parse error.

#include "esapi_model/lemma_suite.hpp"
#include "esapi_model/resource_store.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace esapi_model::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

// ---------------------------------------------------------------- lemmas

struct LemmaOptions
{
    std::size_t max_nodes = 3;
    bool mutants = false;
    unsigned threads = 0;
    std::string json_path;
};

inline nlohmann::json to_json(const std::vector<LemmaReport>& reports, const LemmaOptions& opt,
                              bool passed)
{
    nlohmann::json out;
    out["max_nodes"] = opt.max_nodes;
    out["variant"] = opt.mutants ? "mutant" : "sound";
    out["passed"] = passed;
    auto& arr = out["lemmas"] = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["name"] = r.name;
        j["configs_checked"] = r.configs_checked;
        j["counterexamples"] = r.counterexample_count;
        j["elapsed_ms"] = r.elapsed_ms;
        auto& samples = j["samples"] = nlohmann::json::array();
        for (const auto& c : r.counterexamples) {
            std::ostringstream heap;
            heap << c.heap;
            samples.push_back({{"heap", heap.str()}, {"binding", c.binding}});
        }
        arr.push_back(std::move(j));
    }
    return out;
}

/// One line per lemma: "<name> <configs> <counterexamples> <ms>".
///
/// In mutant mode the falsified variants are run instead and the exit status
/// is 0 only if every one of them was caught.
inline int run_lemmas(const LemmaOptions& opt, std::ostream& out, std::ostream& err)
{
    if (opt.max_nodes < 1 || opt.max_nodes > kMaxHeapNodes) {
        err << "lemmas: --max-nodes must be in [1, " << kMaxHeapNodes << "]\n";
        return kExitUsage;
    }

    const auto reports =
        run_suite(opt.max_nodes, opt.mutants ? Variant::mutant : Variant::sound, opt.threads);

    bool passed = true;
    for (const auto& r : reports) {
        out << r.name << ' ' << r.configs_checked << ' ' << r.counterexample_count << ' '
            << std::fixed << std::setprecision(1) << r.elapsed_ms << '\n';
        const bool ok = opt.mutants ? r.counterexample_count > 0 : r.passed();
        passed = passed && ok;
        if (!opt.mutants)
            for (const auto& c : r.counterexamples)
                out << "  counterexample: {" << c.heap << "} " << c.binding << '\n';
        if (opt.mutants && !ok)
            out << "  mutant of " << r.name << " was not detected\n";
    }

    if (!opt.json_path.empty()) {
        std::ofstream f(opt.json_path);
        if (!f) {
            err << "lemmas: cannot write " << opt.json_path << '\n';
            return kExitUsage;
        }
        f << to_json(reports, opt, passed).dump(2) << '\n';
    }
    return passed ? kExitOk : kExitViolation;
}

// -------------------------------------------------------------- scenario

struct GetNodeCmd { std::uint32_t handle; };
struct CreateNodeCmd { std::uint32_t handle; };
struct ExpectCodeCmd { int code; };
struct ExpectListCmd { std::vector<std::uint32_t> handles; };
struct SnapshotCmd { std::string label; };
struct AssertUnchangedCmd { std::string label; bool strict; };

using ScenarioOp = std::variant<GetNodeCmd, CreateNodeCmd, ExpectCodeCmd, ExpectListCmd,
                                SnapshotCmd, AssertUnchangedCmd>;

struct ScenarioCommand
{
    std::size_t line;
    ScenarioOp op;
};

class ScenarioParseError : public std::runtime_error
{
public:
    ScenarioParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::uint32_t u32_field(const nlohmann::json& j, const char* key, std::size_t line)
{
    if (!j.contains(key) || !j[key].is_number_unsigned() || j[key].get<std::uint64_t>() > 0xFFFFFFFFu)
        throw ScenarioParseError(line, std::string("'") + key + "' must be a 32-bit unsigned integer");
    return j[key].get<std::uint32_t>();
}

inline std::string label_field(const nlohmann::json& j, std::size_t line)
{
    if (!j.contains("label") || !j["label"].is_string())
        throw ScenarioParseError(line, "'label' must be a string");
    return j["label"].get<std::string>();
}

} // namespace detail

/// One JSON object per line; blank lines and lines starting with '#' are
/// skipped. Everything is parsed and type-checked before anything runs.
inline std::vector<ScenarioCommand> parse_scenario(std::istream& in)
{
    std::vector<ScenarioCommand> cmds;
    std::string text;
    for (std::size_t line = 1; std::getline(in, text); ++line) {
        const auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos || text[first] == '#')
            continue;

        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ScenarioParseError(line, std::string("malformed JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
            throw ScenarioParseError(line, "expected an object with a string 'op'");

        const auto op = j["op"].get<std::string>();
        if (op == "get_node") {
            cmds.push_back({line, GetNodeCmd{detail::u32_field(j, "handle", line)}});
        } else if (op == "create_node") {
            cmds.push_back({line, CreateNodeCmd{detail::u32_field(j, "handle", line)}});
        } else if (op == "expect_code") {
            if (!j.contains("code") || !j["code"].is_number_integer())
                throw ScenarioParseError(line, "'code' must be an integer");
            cmds.push_back({line, ExpectCodeCmd{j["code"].get<int>()}});
        } else if (op == "expect_list") {
            if (!j.contains("handles") || !j["handles"].is_array())
                throw ScenarioParseError(line, "'handles' must be an array");
            ExpectListCmd c;
            for (const auto& h : j["handles"]) {
                if (!h.is_number_unsigned() || h.get<std::uint64_t>() > 0xFFFFFFFFu)
                    throw ScenarioParseError(line, "'handles' entries must be 32-bit unsigned integers");
                c.handles.push_back(h.get<std::uint32_t>());
            }
            cmds.push_back({line, std::move(c)});
        } else if (op == "snapshot") {
            cmds.push_back({line, SnapshotCmd{detail::label_field(j, line)}});
        } else if (op == "assert_unchanged") {
            bool strict = false;
            if (j.contains("strict")) {
                if (!j["strict"].is_boolean())
                    throw ScenarioParseError(line, "'strict' must be a boolean");
                strict = j["strict"].get<bool>();
            }
            cmds.push_back({line, AssertUnchangedCmd{detail::label_field(j, line), strict}});
        } else {
            throw ScenarioParseError(line, "unknown op '" + op + "'");
        }
    }
    return cmds;
}

/// Replays a parsed scenario against a fresh store, checking the store
/// invariants after every mutating command.
class ScenarioRunner
{
public:
    ScenarioRunner(std::size_t bank_capacity, std::ostream& out) : bank_(bank_capacity), out_(out) {}

    /// Returns false at the first failed expectation or invariant.
    bool run(const std::vector<ScenarioCommand>& cmds)
    {
        for (const auto& c : cmds) {
            line_ = c.line;
            if (!std::visit([this](const auto& op) { return exec(op); }, c.op))
                return false;
        }
        return true;
    }

private:
    struct Saved
    {
        MemorySnapshot mem;
        Context ctx;
        LogicList list;
    };

    bool fail(const std::string& what)
    {
        out_ << "line " << line_ << ": FAIL " << what << '\n';
        return false;
    }

    std::vector<std::uint32_t> handles() const
    {
        std::vector<std::uint32_t> hs;
        const LogicList ll = *to_ll(bank_, ctx_.rsrc_list, kNil);
        for (NodeRef r : ll)
            hs.push_back(bank_.cell(r).handle);
        return hs;
    }

    bool exec(const GetNodeCmd& c)
    {
        const auto entry = capture(bank_, ctx_, slot_);
        const ReturnCode rc = get_node(bank_, ctx_, c.handle, slot_);
        last_ = to_int(rc);
        out_ << "line " << line_ << ": get_node " << c.handle << " -> " << *last_ << " out=" << slot_.content
             << '\n';
        if (auto bad = check_get_node(entry, bank_, ctx_, slot_, c.handle, rc))
            return fail(*bad);
        return true;
    }

    bool exec(const CreateNodeCmd& c)
    {
        const ReturnCode rc = create_node(bank_, ctx_, c.handle, slot_);
        last_ = to_int(rc);
        out_ << "line " << line_ << ": create_node " << c.handle << " -> " << *last_
             << " out=" << slot_.content << '\n';
        if (auto bad = check_store(bank_, ctx_, slot_))
            return fail(*bad);
        return true;
    }

    bool exec(const ExpectCodeCmd& c)
    {
        if (!last_)
            return fail("expect_code before any call");
        if (*last_ != c.code)
            return fail("expected code " + std::to_string(c.code) + ", got " + std::to_string(*last_));
        out_ << "line " << line_ << ": expect_code " << c.code << " ok\n";
        return true;
    }

    bool exec(const ExpectListCmd& c)
    {
        const auto got = handles();
        if (got != c.handles) {
            std::ostringstream os;
            os << "expected list [";
            for (std::size_t i = 0; i < c.handles.size(); ++i)
                os << (i ? "," : "") << c.handles[i];
            os << "], got [";
            for (std::size_t i = 0; i < got.size(); ++i)
                os << (i ? "," : "") << got[i];
            os << ']';
            return fail(os.str());
        }
        out_ << "line " << line_ << ": expect_list ok (" << got.size() << " nodes)\n";
        return true;
    }

    bool exec(const SnapshotCmd& c)
    {
        saved_.insert_or_assign(c.label,
                                Saved{bank_.snapshot(), ctx_, *to_ll(bank_, ctx_.rsrc_list, kNil)});
        out_ << "line " << line_ << ": snapshot " << c.label << '\n';
        return true;
    }

    bool exec(const AssertUnchangedCmd& c)
    {
        const auto it = saved_.find(c.label);
        if (it == saved_.end())
            return fail("no snapshot labeled '" + c.label + "'");
        const Saved& s = it->second;
        if (!unchanged_ll(s.mem, bank_, s.list))
            return fail("unchanged_ll violated since '" + c.label + "'");
        if (c.strict && (bank_.snapshot() != s.mem || ctx_ != s.ctx))
            return fail("state changed since '" + c.label + "'");
        out_ << "line " << line_ << ": assert_unchanged " << c.label << (c.strict ? " (strict)" : "")
             << " ok\n";
        return true;
    }

    Bank bank_;
    Context ctx_;
    Slot slot_;
    std::optional<int> last_;
    std::map<std::string, Saved> saved_;
    std::size_t line_ = 0;
    std::ostream& out_;
};

inline int run_scenario(std::istream& in, std::size_t bank_capacity, std::ostream& out,
                        std::ostream& err)
{
    if (bank_capacity == 0) {
        err << "scenario: --bank must be at least 1\n";
        return kExitUsage;
    }
    std::vector<ScenarioCommand> cmds;
    try {
        cmds = parse_scenario(in);
    } catch (const ScenarioParseError& e) {
        err << "scenario: parse error at " << e.what() << '\n';
        return kExitUsage;
    }
    ScenarioRunner runner(bank_capacity, out);
    if (!runner.run(cmds))
        return kExitViolation;
    out << "scenario passed (" << cmds.size() << " commands)\n";
    return kExitOk;
}

inline int run_scenario_file(const std::string& path, std::size_t bank_capacity, std::ostream& out,
                             std::ostream& err)
{
    std::ifstream f(path);
    if (!f) {
        err << "scenario: cannot open " << path << '\n';
        return kExitUsage;
    }
    return run_scenario(f, bank_capacity, out, err);
}

// ------------------------------------------------------------------ fuzz

struct FuzzOptions
{
    std::uint64_t ops = 10000;
    std::uint64_t seed = 1;
    std::size_t bank = kDefaultBankCapacity;
    std::uint32_t alphabet = 0; // 0: twice the bank capacity
};

struct FuzzResult
{
    int exit_code = kExitOk;
    std::map<int, std::uint64_t> histogram;
    std::size_t list_length = 0;
    std::size_t allocated = 0;
    std::optional<std::uint64_t> failing_prefix;
};

/// Random get_node calls with the full postcondition battery after each.
/// Deterministic for a fixed seed.
inline FuzzResult fuzz(const FuzzOptions& opt, std::ostream& out)
{
    FuzzResult res;
    const std::uint32_t alphabet =
        opt.alphabet ? opt.alphabet : static_cast<std::uint32_t>(2 * opt.bank);
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, alphabet - 1);

    Bank bank(opt.bank);
    Context ctx;
    Slot slot;
    for (std::uint64_t i = 0; i < opt.ops; ++i) {
        const std::uint32_t h = pick(rng);
        const auto entry = capture(bank, ctx, slot);
        const ReturnCode rc = get_node(bank, ctx, h, slot);
        ++res.histogram[to_int(rc)];
        if (auto bad = check_get_node(entry, bank, ctx, slot, h, rc)) {
            out << "violation at op " << i << ": " << *bad << '\n';
            out << "minimal reproducing prefix: " << (i + 1) << " ops\n";
            res.failing_prefix = i + 1;
            res.exit_code = kExitViolation;
            break;
        }
    }
    res.list_length = to_ll(bank, ctx.rsrc_list, kNil).value_or(LogicList{}).size();
    res.allocated = bank.alloc_idx();
    return res;
}

inline int run_fuzz(const FuzzOptions& opt, std::ostream& out, std::ostream& err)
{
    if (opt.ops < 1 || opt.bank < 1) {
        err << "fuzz: --ops and --bank must be at least 1\n";
        return kExitUsage;
    }
    const FuzzResult res = fuzz(opt, out);
    out << "list_length " << res.list_length << '\n';
    out << "allocated " << res.allocated << '\n';
    for (const auto& [code, n] : res.histogram)
        out << "code " << code << ' ' << n << '\n';
    return res.exit_code;
}

} // namespace esapi_model::cli
