#include "jetinv/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return jetinv::cli::main_entry(args);
}
