#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "fracperim/acceptance.hpp"

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    int failed = 0;
    const auto outcomes = fracperim::acceptance::run(only, [](const fracperim::acceptance::Outcome& o) {
        std::printf("%s\n", fracperim::acceptance::format_line(o).c_str());
        std::fflush(stdout);
    });
    for (const auto& o : outcomes) failed += o.pass ? 0 : 1;
    std::printf("%zu criteria, %d failed\n", outcomes.size(), failed);
    return failed == 0 ? 0 : 1;
}
