#include <iostream>

#include "trapent/checks.hpp"

int main() { return trapent::validation::validate_all(std::cout) ? 0 : 1; }
