#include <iostream>
#include <string>
#include <vector>

#include "qcover/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qcover::cli_dispatch(args, std::cout, std::cerr);
}
