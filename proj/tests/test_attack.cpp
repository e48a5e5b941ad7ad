#include "doctest.h"
TEST_SUITE_BEGIN("attack");
TEST_SUITE_END();
