#include <jacobi_mv/cli.hpp>

int main(int argc, char** argv)
{
    return jacobi_mv::cli::main(argc, argv);
}
