// Acceptance suite: runs every verification criterion at its stated
// tolerance (exact arithmetic, zero tolerance unless a wall-clock budget is
// attached) and prints one pass/fail line per criterion.
#include "lindisk/verify.hpp"

#include <iostream>

int main() {
    return lindisk::run_verify("paper", std::cout);
}
