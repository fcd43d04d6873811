#pragma once

#include "fregean/script.hpp"
#include "fregean/lexer.hpp"
#include "fregean/parser.hpp"
#include "fregean/flow_graph.hpp"
#include "fregean/geometry.hpp"
#include "fregean/contraction.hpp"
#include "fregean/horn.hpp"
#include "fregean/export.hpp"
