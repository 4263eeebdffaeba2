#pragma once

#include <homc/bench.hpp>
#include <homc/conditions.hpp>
#include <homc/fixtures.hpp>
#include <homc/io.hpp>
#include <homc/pagerank.hpp>
#include <homc/prob_vector.hpp>
#include <homc/solvers.hpp>
#include <homc/tensor.hpp>
