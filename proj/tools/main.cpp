#include <string>
#include <vector>

#include "roc2/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return roc2::run_cli(args);
}
