#include "sumrange/cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        std::cout << "usage: sumrange <analyze|construct|verify|enumerate> <spec.json> [--mode ordinary|stat|2n]\n"
                     "         [--target V] [--eps Q] [--depth N] [--window LO,HI] [--coeff-bound B] [--out PATH]\n";
        return args.empty() ? sumrange::cli::exit_code::usage : 0;
    }
    return sumrange::cli::main_entry(args, std::cout, std::cerr);
}
