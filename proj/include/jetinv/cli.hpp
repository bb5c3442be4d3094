#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace jetinv::cli {

inline int main_entry(const std::vector<std::string>& args) {
    (void)args;
    std::cerr << "jetinv: no command\n";
    return 1;
}

} // namespace jetinv::cli
