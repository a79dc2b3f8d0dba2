#include "mtaeq/cli.hpp"

int main(int argc, char** argv) { return mtaeq::cli::run(argc, argv); }
