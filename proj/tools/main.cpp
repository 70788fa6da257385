#include <string>
#include <vector>

#include "vcbsp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return vcbsp::cli::run(args);
}
