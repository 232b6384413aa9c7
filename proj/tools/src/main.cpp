#include <iostream>
#include <string>
#include <vector>

#include "ovalkit_cli/app.hpp"

int main(int argc, char** argv) {
    return ovalkit::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
