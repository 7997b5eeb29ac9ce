#pragma once

#include "phragmen/algorithm1.hpp"
#include "phragmen/apportionment.hpp"
#include "phragmen/axioms.hpp"
#include "phragmen/balance.hpp"
#include "phragmen/corpus.hpp"
#include "phragmen/enestrom.hpp"
#include "phragmen/loads.hpp"
#include "phragmen/optrules.hpp"
#include "phragmen/profile.hpp"
#include "phragmen/rational.hpp"
#include "phragmen/report.hpp"
#include "phragmen/seq.hpp"
#include "phragmen/solver_model.hpp"
