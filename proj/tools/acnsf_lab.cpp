#include "acnsf/cli.hpp"

int main(int argc, char** argv) { return acnsf::dispatch(argc, argv); }
