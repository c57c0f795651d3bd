#include "sunirrep/cli.hpp"

int main(int argc, char** argv) { return sunirrep::cli::main_entry(argc, argv); }
