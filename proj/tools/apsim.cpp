#include <iostream>

#include "lora_ap/cli.hpp"

int main(int argc, char** argv) { return lora_ap::cli_main(argc, argv, std::cout, std::cerr); }
