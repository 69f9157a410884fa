#ifndef AFFAUTO_AFFAUTO_HPP_
#define AFFAUTO_AFFAUTO_HPP_

#include "affauto/automaton.hpp"
#include "affauto/constructions.hpp"
#include "affauto/error.hpp"
#include "affauto/linalg.hpp"
#include "affauto/nadic.hpp"
#include "affauto/treeaction.hpp"

#endif  // AFFAUTO_AFFAUTO_HPP_
