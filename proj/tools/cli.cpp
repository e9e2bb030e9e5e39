#include "cli.hpp"

#include "scg/checks.hpp"
#include "scg/derivation.hpp"
#include "scg/geffert.hpp"
#include "scg/grammar.hpp"
#include "scg/showcase.hpp"
#include "scg/three_nt.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <variant>

namespace scg::cli {
namespace {

/// Usage or input problems; mapped to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using AnyGrammar = std::variant<Grammar, geffert::GeffertGrammar>;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw UsageError("cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw UsageError("cannot write '" + path + "'");
}

std::string format_tag(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream words(line);
        std::string tag;
        if (words >> tag)
            return tag;
    }
    return {};
}

AnyGrammar load(const std::string& path)
{
    auto text = read_file(path);
    try {
        if (format_tag(text) == "geffert") {
            auto g = geffert::parse_geffert(text);
            if (auto report = geffert::validate_geffert(g); !report.ok())
                throw UsageError(path + ": " + report.errors.front());
            return g;
        }
        return parse_grammar(text);
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(path + ": " + e.what());
    }
}

Grammar load_scg(const std::string& path)
{
    auto g = load(path);
    if (auto* scg = std::get_if<Grammar>(&g))
        return std::move(*scg);
    throw UsageError(path + ": expected an scg grammar file");
}

struct BoundsFlags {
    std::size_t max_len = 24;
    std::optional<std::size_t> max_depth;
    std::size_t max_forms = 1'000'000;
    std::optional<std::size_t> max_word_len;

    void attach(CLI::App* app)
    {
        app->add_option("--max-len", max_len, "maximum sentential form length")->check(CLI::NonNegativeNumber);
        app->add_option("--max-depth", max_depth, "maximum derivation depth (default 4 x max-len)")
            ->check(CLI::NonNegativeNumber);
        app->add_option("--max-forms", max_forms, "visited-form budget")->check(CLI::PositiveNumber);
        app->add_option("--max-word-len", max_word_len, "drop forms holding more terminals than this")
            ->check(CLI::NonNegativeNumber);
    }

    EnumerationBounds bounds() const { return EnumerationBounds{max_len, max_depth, max_forms, max_word_len}; }
};

void print_bounds(std::ostream& out, const EnumerationBounds& b)
{
    out << "# bounds: max-len " << b.max_form_length << " max-depth " << b.depth_limit() << " max-forms "
        << b.max_forms;
    if (b.max_word_length)
        out << " max-word-len " << *b.max_word_length;
    out << '\n';
}

BoundedLanguage enumerate_any(const AnyGrammar& g, const EnumerationBounds& b)
{
    if (const auto* scg = std::get_if<Grammar>(&g))
        return enumerate(*scg, b);
    return geffert::enumerate_geffert(std::get<geffert::GeffertGrammar>(g), b);
}

Form parse_word(const AnyGrammar& g, const std::vector<std::string>& tokens)
{
    const auto& terminals = std::holds_alternative<Grammar>(g) ? std::get<Grammar>(g).terminals()
                                                               : std::get<geffert::GeffertGrammar>(g).terminals;
    Form word;
    if (tokens.size() == 1 && tokens.front() == "@")
        return word;
    for (const auto& tok : tokens) {
        auto it = std::find_if(terminals.begin(), terminals.end(), [&](Symbol t) { return t.name() == tok; });
        if (it == terminals.end())
            throw UsageError("'" + tok + "' is not a terminal of the grammar");
        word.push_back(*it);
    }
    return word;
}

void print_metrics(std::ostream& out, const AnyGrammar& any)
{
    if (const auto* g = std::get_if<Grammar>(&any)) {
        auto m = compute_metrics(*g);
        out << "format: scg\n"
            << "nonterminals: " << m.nonterminal_count << '\n'
            << "terminals: " << m.terminal_count << '\n'
            << "productions: " << m.production_count << '\n'
            << "non-context-free productions: " << m.non_cf_production_count << '\n'
            << "width: " << m.width << '\n'
            << "erasing: " << (m.is_erasing ? "true" : "false") << '\n';
        return;
    }
    const auto& g = std::get<geffert::GeffertGrammar>(any);
    std::size_t append = 0, bilateral = 0, erase = 0;
    for (const auto& rule : g.rules) {
        if (std::holds_alternative<geffert::AppendTerminal>(rule))
            ++append;
        else if (std::holds_alternative<geffert::Bilateral>(rule))
            ++bilateral;
        else
            ++erase;
    }
    out << "format: geffert\n"
        << "nonterminals: 5\n"
        << "terminals: " << g.terminals.size() << '\n'
        << "context-free rules: " << g.rules.size() << " (append-terminal " << append << ", bilateral "
        << bilateral << ", erase " << erase << ")\n"
        << "erasure rules: 2\n";
}

int cmd_metrics(const std::string& path, std::ostream& out, std::ostream& err)
{
    auto g = load(path);
    if (const auto* scg = std::get_if<Grammar>(&g))
        for (const auto& w : validation_warnings(*scg))
            err << "warning: " << w << '\n';
    else
        for (const auto& w : geffert::validate_geffert(std::get<geffert::GeffertGrammar>(g)).warnings)
            err << "warning: " << w << '\n';
    print_metrics(out, g);
    return 0;
}

int cmd_enumerate(const std::string& path, const EnumerationBounds& b, std::ostream& out)
{
    auto g = load(path);
    print_bounds(out, b);
    auto lang = enumerate_any(g, b);
    for (const auto& w : lang.words)
        out << to_string(w) << '\n';
    out << "words: " << lang.words.size() << '\n'
        << "exhaustive: " << (lang.exhaustive ? "true" : "false") << '\n'
        << "visited: " << lang.visited_forms << '\n'
        << "pruned: " << lang.pruned_forms << '\n';
    return 0;
}

int cmd_member(const std::string& path, const std::vector<std::string>& tokens, const EnumerationBounds& b,
               std::ostream& out)
{
    auto g = load(path);
    Form word = parse_word(g, tokens);
    print_bounds(out, b);
    if (const auto* gg = std::get_if<geffert::GeffertGrammar>(&g)) {
        auto trace = geffert::find_geffert_trace(*gg, word, b);
        if (!trace) {
            out << "unknown\n";
            return 1;
        }
        out << "member\nstart: " << to_string(trace->start) << '\n';
        for (const auto& step : trace->steps)
            out << "step " << geffert::describe(step) << '\n';
        return 0;
    }
    auto verdict = decide_membership(std::get<Grammar>(g), word, b);
    if (auto* m = std::get_if<Member>(&verdict)) {
        out << "member\n" << render_trace(m->trace);
        return 0;
    }
    out << (std::holds_alternative<NotMemberExhaustive>(verdict) ? "not-member (exhaustive)\n" : "unknown\n");
    return 1;
}

int cmd_transform(const std::string& in_path, const std::string& out_path, std::ostream& out)
{
    auto g = load(in_path);
    const auto* source = std::get_if<geffert::GeffertGrammar>(&g);
    if (!source)
        throw UsageError(in_path + ": expected a geffert grammar file");
    three_nt::TransformOutput result = [&] {
        try {
            return three_nt::transform(*source);
        } catch (const std::invalid_argument& e) {
            throw UsageError(in_path + ": " + e.what());
        }
    }();
    write_file(out_path, render_grammar(result.grammar));
    write_file(out_path + ".prov", three_nt::render_provenance(result));
    out << "wrote " << out_path << " (" << result.grammar.productions().size() << " productions) and "
        << out_path << ".prov\n";
    return 0;
}

int cmd_diff(const std::string& p1, const std::string& p2, const EnumerationBounds& b, std::ostream& out)
{
    auto g1 = load(p1);
    auto g2 = load(p2);
    const std::size_t horizon = b.max_word_length.value_or(b.max_form_length);
    EnumerationBounds bounded = b;
    bounded.max_word_length = horizon;
    print_bounds(out, bounded);
    auto l1 = enumerate_any(g1, bounded);
    auto l2 = enumerate_any(g2, bounded);
    auto w1 = words_up_to(l1, horizon);
    auto w2 = words_up_to(l2, horizon);
    out << "left: " << w1.size() << " words, exhaustive: " << (l1.exhaustive ? "true" : "false") << '\n'
        << "right: " << w2.size() << " words, exhaustive: " << (l2.exhaustive ? "true" : "false") << '\n';

    auto less = [](const Form& a, const Form& b) { return canonical_less(a, b); };
    std::vector<Form> only_left, only_right;
    std::set_difference(w1.begin(), w1.end(), w2.begin(), w2.end(), std::back_inserter(only_left), less);
    std::set_difference(w2.begin(), w2.end(), w1.begin(), w1.end(), std::back_inserter(only_right), less);
    if (only_left.empty() && only_right.empty()) {
        out << "equal\n";
        return 0;
    }
    out << "differ\n";
    const bool left_only =
        !only_left.empty() && (only_right.empty() || !less(only_right.front(), only_left.front()));
    if (left_only)
        out << "counterexample (left only): " << to_string(only_left.front()) << '\n';
    else
        out << "counterexample (right only): " << to_string(only_right.front()) << '\n';
    if (!(left_only ? l2 : l1).exhaustive)
        out << "note: " << (left_only ? "right" : "left")
            << " side not exhaustive, the word may only be beyond the bounds\n";
    return 1;
}

int cmd_showcase(const std::string& name, std::optional<std::uint64_t> k, std::optional<std::uint64_t> l,
                 const std::string& out_path, std::ostream& out)
{
    std::string text;
    if (name == "example1") {
        text = render_grammar(showcase::example1());
    } else if (name == "lemma1") {
        showcase::ShowcaseParams params{k.value_or(2), l.value_or(2)};
        try {
            text = render_grammar(showcase::lemma1(params));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else {
        throw UsageError("unknown showcase '" + name + "' (expected example1 or lemma1)");
    }
    if (out_path.empty())
        out << text;
    else
        write_file(out_path, text);
    return 0;
}

int cmd_check(const std::string& path, const std::string& family, const EnumerationBounds& b, std::ostream& out)
{
    if (family != "three-nt" && family != "lemma1" && family != "geffert")
        throw UsageError("unknown family '" + family + "' (expected three-nt, lemma1, or geffert)");
    auto g = load(path);
    checks::CheckReport report;
    try {
        if (family == "geffert") {
            const auto* gg = std::get_if<geffert::GeffertGrammar>(&g);
            if (!gg)
                throw UsageError(path + ": family geffert needs a geffert grammar file");
            report = checks::geffert_shape(*gg, b);
        } else {
            const auto* scg = std::get_if<Grammar>(&g);
            if (!scg)
                throw UsageError(path + ": family " + family + " needs an scg grammar file");
            report = family == "three-nt" ? checks::three_nt(*scg, b) : checks::lemma1_markers(*scg, b);
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(path + ": " + e.what());
    }
    print_bounds(out, b);
    out << "family: " << family << '\n'
        << "visited: " << report.visited << '\n'
        << "violations: " << report.violations << '\n';
    if (report.witness) {
        out << "witness form: " << *report.witness_form << '\n' << "witness trace:\n" << *report.witness;
        return 1;
    }
    return 0;
}

int cmd_replay(const std::string& grammar_path, const std::string& trace_path, std::ostream& out)
{
    auto g = load_scg(grammar_path);
    DerivationTrace trace;
    try {
        trace = parse_trace(g, read_file(trace_path));
    } catch (const ParseError& e) {
        throw UsageError(trace_path + ": " + e.what());
    }
    try {
        out << to_string(replay(g, trace)) << '\n';
    } catch (const ReplayError& e) {
        throw UsageError(trace_path + ": " + e.what());
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Scattered context grammar workbench", "scgtool"};
    app.require_subcommand(1);

    std::string path, path2, out_path, family, name;
    std::vector<std::string> word;
    std::optional<std::uint64_t> k, l;
    BoundsFlags flags;

    auto* metrics = app.add_subcommand("metrics", "descriptional complexity of a grammar file");
    metrics->add_option("file", path)->required();

    auto* enumerate_cmd = app.add_subcommand("enumerate", "bounded language enumeration");
    enumerate_cmd->add_option("file", path)->required();
    flags.attach(enumerate_cmd);

    auto* member = app.add_subcommand("member", "membership search for a word (`@` for the empty word)");
    member->add_option("file", path)->required();
    member->add_option("word", word)->required();
    flags.attach(member);

    auto* transform_cmd = app.add_subcommand("transform", "geffert grammar to three-nonterminal scg");
    transform_cmd->add_option("file", path)->required();
    transform_cmd->add_option("-o,--output", out_path)->required();

    auto* diff = app.add_subcommand("diff", "compare bounded languages of two grammar files");
    diff->add_option("left", path)->required();
    diff->add_option("right", path2)->required();
    flags.attach(diff);

    auto* showcase_cmd = app.add_subcommand("showcase", "emit a built-in grammar (example1, lemma1)");
    showcase_cmd->add_option("name", name)->required();
    showcase_cmd->add_option("--k", k);
    showcase_cmd->add_option("--l", l);
    showcase_cmd->add_option("-o,--output", out_path);

    auto* check = app.add_subcommand("check", "sweep reachable forms for family invariants");
    check->add_option("file", path)->required();
    check->add_option("--family", family, "three-nt, lemma1, or geffert")->required();
    flags.attach(check);

    auto* replay_cmd = app.add_subcommand("replay", "replay a derivation trace file");
    replay_cmd->add_option("grammar", path)->required();
    replay_cmd->add_option("trace", path2)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        const auto bounds = flags.bounds();
        if (metrics->parsed())
            return cmd_metrics(path, out, err);
        if (enumerate_cmd->parsed())
            return cmd_enumerate(path, bounds, out);
        if (member->parsed())
            return cmd_member(path, word, bounds, out);
        if (transform_cmd->parsed())
            return cmd_transform(path, out_path, out);
        if (diff->parsed())
            return cmd_diff(path, path2, bounds, out);
        if (showcase_cmd->parsed())
            return cmd_showcase(name, k, l, out_path, out);
        if (check->parsed())
            return cmd_check(path, family, bounds, out);
        if (replay_cmd->parsed())
            return cmd_replay(path, path2, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace scg::cli
