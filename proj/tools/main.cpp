#include "eosmap/cli.hpp"

int main(int argc, char** argv) {
    return eosmap::run_cli(argc, argv);
}
