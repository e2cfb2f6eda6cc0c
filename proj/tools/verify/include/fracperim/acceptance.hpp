#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fracperim::acceptance {

struct Outcome {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

int criterion_count();
std::string criterion_title(int id);

// Runs the selected criteria (all when `only` is empty) in id order; `report` sees each outcome as it finishes.
std::vector<Outcome> run(const std::vector<int>& only = {}, const std::function<void(const Outcome&)>& report = {});

std::string format_line(const Outcome& o);

}  // namespace fracperim::acceptance
