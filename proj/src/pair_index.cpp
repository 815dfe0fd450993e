#include "paley/pair_index.hpp"
