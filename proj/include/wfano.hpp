#pragma once

#include "wfano/catalog.hpp"
#include "wfano/catalog_io.hpp"
#include "wfano/error.hpp"
#include "wfano/exactmath.hpp"
#include "wfano/irrational.hpp"
#include "wfano/membership.hpp"
#include "wfano/normalize.hpp"
#include "wfano/polynomial.hpp"
#include "wfano/quasismooth.hpp"
#include "wfano/singular.hpp"
#include "wfano/symmetry.hpp"
#include "wfano/wspace.hpp"
