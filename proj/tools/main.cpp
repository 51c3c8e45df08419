#include <iostream>
#include <string>
#include <vector>

#include <bergman/cli.hpp>

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv, argv + argc);
    try {
        return bergman::run(args, std::cout, std::cerr);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
