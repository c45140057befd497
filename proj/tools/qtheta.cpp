#include <iostream>

#include <qtheta/cli.hpp>

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return qtheta::run_cli(args, std::cout, std::cerr);
}
