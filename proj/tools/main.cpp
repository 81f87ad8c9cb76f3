#include "resiq/cli.hpp"

int main(int argc, char** argv)
{
    return resiq::cli::run(argc, argv);
}
