#ifndef MTAEQ_MTAEQ_HPP
#define MTAEQ_MTAEQ_HPP

#include "mtaeq/automaton.hpp"
#include "mtaeq/equivalence.hpp"
#include "mtaeq/field.hpp"
#include "mtaeq/grid_vector.hpp"
#include "mtaeq/io.hpp"
#include "mtaeq/oracle.hpp"
#include "mtaeq/unipoly.hpp"
#include "mtaeq/valuation.hpp"
#include "mtaeq/witness.hpp"

#endif  // MTAEQ_MTAEQ_HPP
