#include "xylab/run.hpp"

int main(int argc, char** argv) {
    return xylab::cli::main_entry(argc, argv);
}
