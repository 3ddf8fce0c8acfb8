#include "tiecodes/games.hpp"
#include "tiecodes/genetic.hpp"
#include "tiecodes/io.hpp"
#include "tiecodes/strata.hpp"

#include <CLI11.hpp>

#include <array>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

using namespace tiecodes;

namespace {

// Bad flag values: exit status 2.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed input the mathematics rejects: exit status 1.
struct domain_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RealVec lengths_flag(const std::string& flag, const std::string& text)
{
    RealVec v;
    try {
        v = parse_real_vec(text);
    } catch (const std::invalid_argument& e) {
        throw usage_error(flag + ": " + e.what());
    }
    if (v.empty())
        throw usage_error(flag + ": expected at least one length");
    if (v.size() > static_cast<std::size_t>(kMaxTableArity))
        throw usage_error(flag + ": at most " + std::to_string(kMaxTableArity) + " lengths");
    return v;
}

void require_range(const std::string& flag, int value, int lo, int hi)
{
    if (value < lo || value > hi)
        throw usage_error(flag + ": must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                          std::to_string(value));
}

std::string mask_text(ElementMask m)
{
    std::string out;
    for (int v : mask_members_desc(m))
        out += (out.empty() ? "" : ",") + std::to_string(v);
    return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct Options {
    unsigned parallel = 0;
    bool quiet = false;

    std::string lengths, lengths2, code, table, what = "codes", format = "json", out, resume;
    int n = 0;
    int max_n = 6;
    bool allow_strata = false, half = false, integral = false, check = false;
    bool dummies = false, weights = false, codes = false, strata = false;
};

void progress(const Options& o, const std::string& msg)
{
    if (!o.quiet)
        std::cerr << msg << std::endl;
}

// ---- subcommands ------------------------------------------------------------------------------

int run_classify(const Options& o)
{
    RealVec z = lengths_flag("--lengths", o.lengths);
    RealVec a = canonical_real(z);
    Json j{{"input", to_json(z)}, {"canonical", to_json(a)}, {"element", to_json(canonicalizing_element(z))}};
    auto fam = short_family(a);
    if (auto* ng = std::get_if<NonGeneric>(&fam)) {
        j["generic"] = false;
        j["wall"] = mask_text(ng->wall);
        if (!o.allow_strata) {
            std::cerr << "classify: non-generic length vector, lies on wall " << mask_text(ng->wall)
                      << " (pass --allow-strata to classify its stratum)\n";
            emit(j);
            return 1;
        }
        j["verdict"] = "stratum";
        bool positive = std::all_of(a.begin(), a.end(), [](const Rational& v) { return v > 0; });
        if (positive) {
            auto sig = signature_of(a);
            j["zero_walls"] = sig.zeros();
            j["signature"] = canonical_signature(sig).to_string();
        } else {
            j["signature"] = nullptr; // zero coordinates: a stratum of a lower-dimensional space
        }
    } else {
        j["generic"] = true;
        j["verdict"] = "chamber";
        j["code"] = format_code(genetic_code_of(a));
    }
    emit(j);
    return 0;
}

int run_realize(const Options& o)
{
    GeneticCode c;
    try {
        c = parse_code(o.code, o.n > 0 ? std::optional<int>(o.n) : std::nullopt);
    } catch (const std::invalid_argument& e) {
        throw usage_error(std::string("--code: ") + e.what());
    }
    Json j{{"n", c.n}, {"code", format_code(c)}, {"virtual", is_virtual_code(c)}};
    std::optional<RealVec> a;
    if (is_virtual_code(c))
        a = realize_code(c);
    j["realizable"] = a.has_value();
    if (a)
        j["witness"] = to_json(*a);
    else
        j["result"] = "not-realizable";
    emit(j);
    return 0;
}

int run_synthesize(const Options& o)
{
    require_range("--n", o.n, 0, kMaxTableArity);
    BoolFunc f(0);
    try {
        f = from_hex(o.table, o.n);
    } catch (const std::invalid_argument& e) {
        throw usage_error(std::string("--table: ") + e.what());
    }
    auto wt = synthesize(f, {.integral = o.integral, .threshold_at_half = o.half});
    Json j{{"n", o.n}, {"table", to_hex(f)}, {"threshold", wt.has_value()}};
    if (wt) {
        j["w"] = to_json(wt->w);
        j["t"] = to_fraction(wt->t);
    } else {
        j["result"] = "not-threshold";
    }
    emit(j);
    return 0;
}

std::uint64_t strata_with_progress(int n, const Options& o)
{
    StrataExplorer ex(n);
    ex.seed_chambers(o.parallel);
    ex.run(o.parallel, [&](const StrataExplorer& e) {
        progress(o, "strata n=" + std::to_string(n) + ": " + std::to_string(e.strata().size()) + " found");
    });
    return ex.strata().size();
}

int run_count(const Options& o)
{
    static const std::map<std::string, int> max_n{{"codes", kMaxEnumerationArity}, {"chambers", 9}, {"strata", 8}, {"total-strata", 8}};
    auto it = max_n.find(o.what);
    if (it == max_n.end())
        throw usage_error("--what: expected codes, chambers, strata or total-strata");
    require_range("--n", o.n, 1, it->second);
    std::uint64_t value = 0;
    CensusOptions copts{o.parallel};
    if (o.what == "codes")
        value = census(o.n, CensusMode::virtual_codes, copts);
    else if (o.what == "chambers")
        value = census(o.n, CensusMode::chambers, copts);
    else if (o.what == "strata")
        value = strata_with_progress(o.n, o);
    else
        value = total_strata(
            o.n, [&](int m) { return strata_with_progress(m, o); },
            [&](int m) { return census(m, CensusMode::chambers, copts); });
    std::cout << value << "\n";
    return 0;
}

// Published values, used only by --check.
constexpr std::array<std::uint64_t, 9> kExpectedC{0, 0, 1, 2, 3, 7, 21, 135, 2470};
constexpr std::array<std::uint64_t, 9> kExpectedV{0, 1, 1, 2, 3, 7, 21, 135, 2470};
constexpr std::array<std::uint64_t, 9> kExpectedK{0, 1, 2, 3, 7, 21, 117, 1506, 62254};
constexpr std::array<std::uint64_t, 9> kExpectedTk{0, 1, 3, 5, 10, 28, 138, 1623, 63742};

int run_tables(const Options& o)
{
    require_range("--max-n", o.max_n, 1, 8);
    if (o.format != "csv" && o.format != "json")
        throw usage_error("--format: expected csv or json");
    CensusOptions copts{o.parallel};
    struct Row {
        int n;
        std::uint64_t c, v, k, tk;
    };
    std::vector<Row> rows;
    std::uint64_t tk = 0;
    for (int n = 1; n <= o.max_n; ++n) {
        Row r{n, census(n, CensusMode::chambers, copts), census(n, CensusMode::virtual_codes, copts),
              strata_with_progress(n, o), 0};
        tk = n == 1 ? 1 : r.k + tk - rows.back().c;
        r.tk = tk;
        rows.push_back(r);
    }
    if (o.format == "csv") {
        std::cout << "n,c,v,k,tk\n";
        for (const auto& r : rows)
            std::cout << r.n << "," << r.c << "," << r.v << "," << r.k << "," << r.tk << "\n";
    } else {
        Json j = Json::array();
        for (const auto& r : rows)
            j.push_back(Json{{"n", r.n}, {"c", r.c}, {"v", r.v}, {"k", r.k}, {"tk", r.tk}});
        emit(j);
    }
    if (!o.check)
        return 0;
    int mismatches = 0;
    auto compare = [&](const char* name, int n, std::uint64_t got, std::uint64_t want) {
        if (got != want) {
            std::cerr << "check: " << name << "(" << n << ") = " << got << ", expected " << want << "\n";
            ++mismatches;
        }
    };
    for (const auto& r : rows) {
        compare("c", r.n, r.c, kExpectedC[r.n]);
        if (r.n >= 3) // the virtual-code table starts at n = 3
            compare("v", r.n, r.v, kExpectedV[r.n]);
        compare("k", r.n, r.k, kExpectedK[r.n]);
        compare("tk", r.n, r.tk, kExpectedTk[r.n]);
    }
    return mismatches == 0 ? 0 : 1;
}

int run_orbit(const Options& o)
{
    RealVec z = lengths_flag("--lengths", o.lengths);
    emit(Json{{"input", to_json(z)}, {"canonical", to_json(canonical_real(z))}, {"element", to_json(canonicalizing_element(z))}});
    return 0;
}

Game game_flag(const std::string& flag, const std::string& text)
{
    RealVec a = lengths_flag(flag, text);
    for (const auto& v : a)
        if (v < 0)
            throw usage_error(flag + ": game weights must be nonnegative");
    return game_from_lengths(a);
}

int run_game(const Options& o)
{
    Game g = game_flag("--lengths", o.lengths);
    Json j = to_json(g);
    j["decisive"] = is_decisive(g);
    if (o.dummies)
        j["dummies"] = dummies(g);
    if (!o.lengths2.empty())
        j["equivalent"] = strategically_equivalent(g, game_flag("--equiv", o.lengths2));
    if (o.weights) {
        if (!is_decisive(g))
            throw domain_failure("game: --weights needs a decisive game (the lengths are not generic)");
        auto w = is_weighted_majority(g);
        if (w)
            j["weights"] = to_json(*w);
        else
            j["weights"] = "not-weighted";
    }
    emit(j);
    return 0;
}

int run_enumerate(const Options& o)
{
    if (o.codes == o.strata)
        throw usage_error("enumerate: pass exactly one of --codes or --strata");
    if (o.codes) {
        require_range("--n", o.n, 1, kMaxEnumerationArity);
        if (o.out.empty())
            throw usage_error("--out: required with --codes");
        CodeFileWriter writer(o.out, o.n);
        enumerate_virtual_codes(o.n, [&](const GeneticCode& c) { writer.write(c); });
        writer.close();
        std::cout << writer.count() << "\n";
        return 0;
    }
    std::optional<StrataExplorer> ex;
    if (!o.resume.empty()) {
        try {
            ex.emplace(StrataExplorer::load_checkpoint(o.resume));
        } catch (const std::runtime_error& e) {
            throw usage_error(std::string("--resume: ") + e.what());
        }
        if (o.n != 0 && o.n != ex->arity())
            throw usage_error("--n: checkpoint was written for n=" + std::to_string(ex->arity()));
    } else {
        require_range("--n", o.n, 1, 8);
        ex.emplace(o.n);
        ex->seed_chambers(o.parallel);
    }
    std::string out = o.out.empty() ? o.resume : o.out;
    ex->run(o.parallel, [&](const StrataExplorer& e) {
        if (!out.empty())
            e.save_checkpoint(out);
        progress(o, "strata: " + std::to_string(e.strata().size()) + " found, " + std::to_string(e.expanded()) + " expanded");
    });
    if (!out.empty())
        ex->save_checkpoint(out);
    std::cout << ex->strata().size() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Chambers, strata, genetic codes and threshold functions of the tie arrangement"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--parallel", o.parallel, "worker threads (default: all cores)")->check(CLI::Range(1u, 1024u));
    app.add_flag("--quiet", o.quiet, "suppress progress on stderr");

    auto* classify = app.add_subcommand("classify", "canonical form, genetic code and chamber/stratum verdict");
    classify->add_option("--lengths", o.lengths, "comma-separated lengths (p or p/q)")->required();
    classify->add_flag("--allow-strata", o.allow_strata, "classify non-generic vectors instead of failing");

    auto* realize = app.add_subcommand("realize", "find a length vector with a given genetic code");
    realize->add_option("--code", o.code, "genes separated by ';', e.g. 6,3;6,2,1")->required();
    realize->add_option("--n", o.n, "arity (default: largest element)");

    auto* synth = app.add_subcommand("synthesize", "weights and threshold for a truth table");
    synth->add_option("--table", o.table, "truth table as hex, input 0 first")->required();
    synth->add_option("--n", o.n, "arity")->required();
    synth->add_flag("--self-dual-at-half", o.half, "pin the threshold to half the weight sum");
    synth->add_flag("--integral", o.integral, "scale the witness to integers");

    auto* count = app.add_subcommand("count", "print a single census number");
    count->add_option("--what", o.what, "codes | chambers | strata | total-strata")->required();
    count->add_option("--n", o.n, "arity")->required();

    auto* tables = app.add_subcommand("tables", "c(n), v(n), k(n), tk(n) for n = 1..max");
    tables->add_option("--max-n", o.max_n, "largest n")->required();
    tables->add_option("--format", o.format, "csv | json");
    tables->add_flag("--check", o.check, "compare against the published values; exit 1 on mismatch");

    auto* orbit = app.add_subcommand("orbit", "T_n canonical form with a witnessing group element");
    orbit->add_option("--lengths", o.lengths, "comma-separated values")->required();

    auto* game = app.add_subcommand("game", "the weighted game of a length vector");
    game->add_option("--lengths", o.lengths, "nonnegative weights")->required();
    auto* g_dummies = game->add_flag("--dummies", o.dummies, "list never-pivotal players");
    auto* g_equiv = game->add_option("--equiv", o.lengths2, "second weight vector to compare with");
    auto* g_weights = game->add_flag("--weights", o.weights, "weighted-majority witness");
    g_dummies->excludes(g_equiv)->excludes(g_weights);
    g_equiv->excludes(g_weights);

    auto* enumerate = app.add_subcommand("enumerate", "write code caches or strata checkpoints");
    enumerate->add_flag("--codes", o.codes, "virtual genetic codes (VGC1 file)");
    enumerate->add_flag("--strata", o.strata, "strata BFS (STR1 checkpoint)");
    enumerate->add_option("--n", o.n, "arity");
    enumerate->add_option("--out", o.out, "output file");
    enumerate->add_option("--resume", o.resume, "continue a strata checkpoint")->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*classify)
            return run_classify(o);
        if (*realize)
            return run_realize(o);
        if (*synth)
            return run_synthesize(o);
        if (*count)
            return run_count(o);
        if (*tables)
            return run_tables(o);
        if (*orbit)
            return run_orbit(o);
        if (*game)
            return run_game(o);
        if (*enumerate)
            return run_enumerate(o);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const domain_failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
