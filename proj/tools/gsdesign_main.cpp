#include <vector>
#include <string>

#include "gsdesign/cli.hpp"

int main(int argc, char** argv) {
    return gsdesign::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
