#pragma once

#include "cmdeg/bernoulli.hpp"
#include "cmdeg/degree.hpp"
#include "cmdeg/errors.hpp"
#include "cmdeg/kernel.hpp"
#include "cmdeg/polygamma.hpp"
#include "cmdeg/real.hpp"
#include "cmdeg/remainders.hpp"
#include "cmdeg/report_io.hpp"
