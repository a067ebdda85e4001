#ifndef ORTHLIN_ORTHLIN_HPP
#define ORTHLIN_ORTHLIN_HPP

#include "core.hpp"
#include "basis.hpp"
#include "matpoly.hpp"
#include "pencil.hpp"
#include "ansatz.hpp"
#include "blocksym.hpp"
#include "oracle.hpp"
#include "spectral.hpp"
#include "random.hpp"
#include "io.hpp"

#endif
