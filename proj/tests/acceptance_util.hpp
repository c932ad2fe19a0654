#pragma once

#include <chrono>
#include <cstdio>
#include <string>

#include "doctest.h"

namespace acceptance {

// Collects checks for one acceptance criterion and prints a single PASS/FAIL
// line when closed. Failures also fail the enclosing doctest case.
class Criterion {
public:
    explicit Criterion(std::string name)
        : name_(std::move(name)), begin_(std::chrono::steady_clock::now()) {}

    void expect(bool condition, const std::string& what) {
        ok_ = ok_ && condition;
        CHECK_MESSAGE(condition, name_, ": ", what);
    }

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin_).count();
    }

    void finish() {
        std::printf("[%s] %s (%.1fs)\n", ok_ ? "PASS" : "FAIL", name_.c_str(), seconds());
        std::fflush(stdout);
    }

private:
    std::string name_;
    bool ok_ = true;
    std::chrono::steady_clock::time_point begin_;
};

}  // namespace acceptance
