#include <cstdio>

#include "cantorfour/acceptance.hpp"

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance_suite <path-to-cli-binary>\n");
        return 2;
    }
    return cantorfour::run_acceptance(argv[1]) == 0 ? 0 : 1;
}
