#pragma once

#include "kgraph/error.hpp"
#include "kgraph/skeleton.hpp"
#include "kgraph/rules.hpp"
#include "kgraph/actions.hpp"
#include "kgraph/analysis/iso.hpp"
#include "kgraph/analysis/quasi_product.hpp"
#include "kgraph/analysis/stability.hpp"
#include "kgraph/analysis/stabilize.hpp"
#include "kgraph/analysis/polytree.hpp"
#include "kgraph/analysis/cstar.hpp"
#include "kgraph/io/document.hpp"
#include "kgraph/io/report.hpp"
#include "kgraph/io/dot.hpp"
#include "kgraph/corpus.hpp"
#include "kgraph/fuzz.hpp"
