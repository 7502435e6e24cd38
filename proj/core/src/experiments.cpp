#include "aeroarm/experiments.hpp"
