#include "doctest.h"

#include "cli.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path grammars = SCG_GRAMMAR_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = scg::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string path(const std::string& name) { return (grammars / name).string(); }

struct TempDir {
    fs::path dir = fs::temp_directory_path() / ("scg_cli_test_" + std::to_string(::getpid()));
    TempDir() { fs::create_directories(dir); }
    ~TempDir() { fs::remove_all(dir); }
    std::string file(const std::string& name, const std::string& text = "") const
    {
        auto p = dir / name;
        if (!text.empty())
            std::ofstream(p) << text;
        return p.string();
    }
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

} // namespace

TEST_CASE("metrics")
{
    auto r = run({"metrics", path("example1.scg")});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "width: 3\n"));
    auto t = run({"metrics", path("ab_balance.transformed.scg")});
    CHECK(contains(t.out, "nonterminals: 3\n"));
    CHECK(contains(t.out, "width: 9\n"));
    CHECK(contains(run({"metrics", path("mirror.geffert")}).out, "format: geffert\n"));

    TempDir tmp;
    auto bad = run({"metrics", tmp.file("bad.scg", "scg\nnonterminals: S\nterminals: a\nstart: S\nprod (S) -> (Q)\n")});
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "line 5"));
    CHECK(run({"metrics", tmp.file("missing.scg")}).code == 2);
}

TEST_CASE("enumerate")
{
    auto r = run({"enumerate", path("example1.scg"), "--max-len", "9"});
    CHECK(r.code == 0);
    CHECK(r.out == "# bounds: max-len 9 max-depth 36 max-forms 1000000\n"
                   "a b c\na a b b c c\na a a b b b c c c\n"
                   "words: 3\nexhaustive: true\nvisited: 7\npruned: 1\n");
    auto e = run({"enumerate", path("erase_only.transformed.scg"), "--max-len", "12"});
    CHECK(contains(e.out, "\n@\nwords: 1\n"));
    auto g = run({"enumerate", path("append_a.geffert"), "--max-len", "4", "--max-word-len", "2"});
    CHECK(contains(g.out, "@\na\na a\nwords: 3\n"));
    CHECK(run({"enumerate", path("example1.scg"), "--max-forms", "0"}).code == 2);
    CHECK(run({"enumerate"}).code == 2);
}

TEST_CASE("member")
{
    auto yes = run({"member", path("example1.scg"), "a", "b", "c"});
    CHECK(yes.code == 0);
    CHECK(contains(yes.out, "member\nstart: S\nstep 1 @ 1\nstep 3 @ 1 2 3\n"));
    auto no = run({"member", path("example1.scg"), "a", "b"});
    CHECK(no.code == 1);
    CHECK(contains(no.out, "not-member (exhaustive)"));
    CHECK(run({"member", path("example1.scg"), "a", "z"}).code == 2);
    CHECK(run({"member", path("append_a.geffert"), "a", "a"}).code == 0);
    CHECK(run({"member", path("append_a.geffert"), "@"}).code == 0);
}

TEST_CASE("transform writes the grammar and its provenance")
{
    TempDir tmp;
    const auto out = tmp.file("t.scg");
    auto r = run({"transform", path("ab_balance.geffert"), "-o", out});
    CHECK(r.code == 0);
    std::ifstream in(out);
    std::stringstream text;
    text << in.rdbuf();
    std::ifstream bundled(path("ab_balance.transformed.scg"));
    std::stringstream expected;
    expected << bundled.rdbuf();
    CHECK(text.str() == expected.str());
    CHECK(fs::exists(out + ".prov"));
    CHECK(contains(r.out, "(8 productions)"));
    CHECK(run({"transform", path("erase_only.geffert"), "-o", out}).code == 0);
    CHECK(contains(run({"metrics", out}).out, "productions: 6\n"));
    CHECK(run({"transform", tmp.file("nope.geffert"), "-o", out}).code == 2);
    CHECK(run({"transform", path("example1.scg"), "-o", out}).code == 2);
}

TEST_CASE("diff")
{
    auto same = run({"diff", path("example1.scg"), path("example1.scg"), "--max-len", "9"});
    CHECK(same.code == 0);
    CHECK(contains(same.out, "equal\n"));
    auto differ = run({"diff", path("example1.scg"), path("lemma1_k2_l2.scg"), "--max-len", "16"});
    CHECK(differ.code == 1);
    CHECK(contains(differ.out, "counterexample (right only): a a\n"));
    auto ab = run({"diff", path("example1.scg"), path("lemma1_k3_l2.scg"), "--max-len", "9", "--max-word-len", "3"});
    CHECK(contains(ab.out, "counterexample (right only): a a\n"));
    auto geff = run({"diff", path("append_a.geffert"), path("ab_balance.geffert"), "--max-len", "12",
                     "--max-word-len", "3"});
    CHECK(geff.code == 0);
    auto transformed = run({"diff", path("append_a.geffert"), path("append_a.transformed.scg"), "--max-len", "14",
                            "--max-word-len", "4"});
    CHECK(transformed.code == 0);
    CHECK(contains(transformed.out, "equal\n"));
    auto partial = run({"diff", path("append_a.geffert"), path("append_a.transformed.scg"), "--max-len", "30",
                        "--max-word-len", "2", "--max-forms", "2000"});
    CHECK(partial.code == 1);
    CHECK(contains(partial.out, "note: right side not exhaustive"));
}

TEST_CASE("showcase")
{
    auto e = run({"showcase", "example1"});
    CHECK(e.code == 0);
    CHECK(contains(e.out, "prod (S) -> (A B C)\n"));
    auto l = run({"showcase", "lemma1", "--k", "2", "--l", "3"});
    CHECK(contains(l.out, "prod (S) -> (a a a)\n"));
    CHECK(run({"showcase", "lemma1", "--k", "5"}).code == 2);
    CHECK(run({"showcase", "nothing"}).code == 2);
}

TEST_CASE("check")
{
    auto ok = run({"check", path("cd_balance.transformed.scg"), "--family", "three-nt", "--max-len", "30",
                   "--max-forms", "20000"});
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "violations: 0\n"));
    CHECK(run({"check", path("lemma1_k3_l2.scg"), "--family", "lemma1"}).code == 0);
    CHECK(run({"check", path("mixed.geffert"), "--family", "geffert", "--max-len", "12"}).code == 0);
    CHECK(run({"check", path("example1.scg"), "--family", "three-nt"}).code == 2);
    CHECK(run({"check", path("example1.scg"), "--family", "geffert"}).code == 2);
    CHECK(run({"check", path("example1.scg"), "--family", "other"}).code == 2);

    TempDir tmp;
    auto mutated = tmp.file("m.scg", "scg\nnonterminals: S A B\nterminals: a\nstart: S\n"
                                     "prod (S) -> (S B B A S A B B S A)\n"
                                     "prod (S, S, S, A) -> (@, @, @, A)\n");
    auto bad = run({"check", mutated, "--family", "three-nt"});
    CHECK(bad.code == 1);
    CHECK(contains(bad.out, "witness trace:\nstart: S\nstep 1 @ 1\n"));
}

TEST_CASE("replay")
{
    TempDir tmp;
    auto good = tmp.file("good.trace", "start: S\nstep 1 @ 1\nstep 3 @ 1 2 3\n");
    auto r = run({"replay", path("example1.scg"), good});
    CHECK(r.code == 0);
    CHECK(r.out == "a b c\n");
    auto bad = tmp.file("bad.trace", "start: S\nstep 1 @ 1\nstep 3 @ 1 2 99\n");
    auto b = run({"replay", path("example1.scg"), bad});
    CHECK(b.code == 2);
    CHECK(contains(b.err, "step 2"));
}

TEST_CASE("help and usage errors")
{
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}
