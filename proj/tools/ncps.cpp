#include "ncps/cli.hpp"

int main(int argc, char** argv) { return ncps::main_entry(argc, argv); }
