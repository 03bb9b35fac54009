#include <string>
#include <vector>

#include "sbrdm/cli/run.hpp"

int main(int argc, char** argv)
{
    return sbrdm::cli::main_entry(std::vector<std::string>(argv + 1, argv + argc));
}
