#include "aeroarm/config.hpp"
