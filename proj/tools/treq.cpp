#include <vector>

#include "treq/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return treq::cli_run(args);
}
