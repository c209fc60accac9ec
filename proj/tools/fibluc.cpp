#include "fibluc/cli.hpp"

#include <cstdio>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto outcome = fibluc::cli::dispatch(std::move(args));
    if (!outcome.out.empty()) std::fputs(outcome.out.c_str(), stdout);
    if (!outcome.err.empty()) std::fputs(outcome.err.c_str(), stderr);
    return outcome.exit_code;
}
