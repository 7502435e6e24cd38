#include "aeroarm/io.hpp"
