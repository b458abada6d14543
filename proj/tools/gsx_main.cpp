#include "gsx/cli.hpp"

int main(int argc, char** argv) {
    return gsx::cli::run(argc, argv);
}
