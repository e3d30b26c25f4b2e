#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const char* bin = std::getenv("PCKA_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "PCKA_BIN not set");
    std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

std::string data(const std::string& f) { return std::string(std::getenv("PCKA_DATA")) + "/" + f; }

std::string tmpfile_path(const std::string& name) {
    return "/tmp/pcka_cli_test_" + name;
}

}  // namespace

TEST_CASE("check-sim exit codes: verified, refuted, usage") {
    auto ok = run("check-sim " + data("vending_machine.aut") + " " + data("vending_spec.aut"));
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("Verified") != std::string::npos);

    auto refuted =
        run("check-sim " + data("vending_spec.aut") + " " + data("vending_machine.aut"));
    CHECK(refuted.exit_code == 1);

    auto usage = run("check-sim only-one-arg");
    CHECK(usage.exit_code > 2);

    auto missing = run("check-sim /nonexistent.aut /nonexistent.aut");
    CHECK(missing.exit_code > 2);
}

TEST_CASE("check-sim with a witness relation") {
    auto done = run("check-sim " + data("vending_machine.aut") + " " +
                    data("vending_spec.aut") + " --witness " +
                    data("vending_witness_completed.rel") + " --horizon 6");
    CHECK(done.exit_code == 0);

    auto listed = run("check-sim " + data("vending_machine.aut") + " " +
                      data("vending_spec.aut") + " --witness " + data("vending_witness.rel") +
                      " --horizon 6");
    CHECK(listed.exit_code == 1);

    auto fwd = run("check-sim " + data("vending_machine.aut") + " " +
                   data("vending_spec.aut") + " --witness " +
                   data("vending_witness_completed.rel") + " --forward");
    CHECK(fwd.exit_code == 0);
}

TEST_CASE("compile then reload round trip") {
    std::string out = tmpfile_path("m.aut");
    auto compile = run("compile " + data("vending.terms") + " --name M --out " + out);
    CHECK(compile.exit_code == 0);
    // The compiled machine simulates the hand-written one and vice versa.
    auto fwd = run("check-sim " + out + " " + data("vending_machine.aut"));
    CHECK(fwd.exit_code == 0);
    auto bwd = run("check-sim " + data("vending_machine.aut") + " " + out);
    CHECK(bwd.exit_code == 0);
    std::remove(out.c_str());
}

TEST_CASE("laws subcommand") {
    auto one = run("laws --law plus-idem --seed 3 --count 3 --depth 2");
    CHECK(one.exit_code == 0);
    CHECK(one.out.find("LAW plus-idem") != std::string::npos);
    CHECK(one.out.find("refuted=0") != std::string::npos);

    auto cat = run("laws --law interchange-eq");
    CHECK(cat.exit_code == 1);  // the catalog refutation is demonstrated
    CHECK(cat.out.find("Refuted") != std::string::npos);

    auto unknown = run("laws --law no-such-law");
    CHECK(unknown.exit_code > 2);
}

TEST_CASE("rg subcommand runs the bundled scenario") {
    auto rg = run("--budget 200000 rg " + data("vending.rg"));
    CHECK(rg.exit_code == 0);
    CHECK(rg.out.find("overall=Verified") != std::string::npos);
}

TEST_CASE("dot subcommand is deterministic") {
    auto d1 = run("dot " + data("vending_machine.aut"));
    auto d2 = run("dot " + data("vending_machine.aut"));
    CHECK(d1.exit_code == 0);
    CHECK(d1.out == d2.out);
    CHECK(d1.out.find("digraph") != std::string::npos);
}
