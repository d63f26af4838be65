#include "dnls/runner.hpp"

int main(int argc, char** argv) { return dnls::dnlslab_main(argc, argv); }
