#include <cstdio>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "curvefrob/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto read_stdin = [] {
        std::ios::sync_with_stdio(false);
        return std::string(std::istreambuf_iterator<char>(std::cin),
                           std::istreambuf_iterator<char>());
    };
    try {
        curvefrob::CliResult result = curvefrob::run_cli(args, read_stdin);
        if (!result.out.empty()) std::fwrite(result.out.data(), 1, result.out.size(), stdout);
        if (!result.err.empty()) std::fwrite(result.err.data(), 1, result.err.size(), stderr);
        return result.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 4;
    }
}
