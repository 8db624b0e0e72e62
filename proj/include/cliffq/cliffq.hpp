#pragma once

#include "cyclo.hpp"
#include "operator_matrix.hpp"
#include "qcore.hpp"
#include "fock.hpp"
#include "report.hpp"
#include "clifford.hpp"
#include "gram.hpp"
#include "osp.hpp"
#include "slmn.hpp"
#include "decomp.hpp"
#include "io.hpp"
#include "run.hpp"
