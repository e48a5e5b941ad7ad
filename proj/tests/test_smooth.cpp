#include "doctest.h"
TEST_SUITE_BEGIN("smooth");
TEST_SUITE_END();
