#include <cstdlib>
#include <iostream>
#include <string>

#include "aztec/acceptance.hpp"

int main(int argc, char** argv) {
    aztec::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--fast")
            opt.fast_only = true;
        else
            opt.only.push_back(std::atoi(a.c_str()));
    }
    bool ok = true;
    aztec::run_acceptance(opt, [&](const aztec::CriterionResult& r) {
        std::cout << aztec::format_result(r) << std::endl;
        ok &= r.pass;
    });
    return ok ? 0 : 1;
}
