#pragma once

#include "heisendyn/error.hpp"
#include "heisendyn/group.hpp"
#include "heisendyn/ring.hpp"
#include "heisendyn/laurent.hpp"
#include "heisendyn/parse.hpp"
#include "heisendyn/configuration.hpp"
#include "heisendyn/qbinomial.hpp"
#include "heisendyn/parallel.hpp"
#include "heisendyn/localization.hpp"
#include "heisendyn/witnesses.hpp"
#include "heisendyn/roots.hpp"
#include "heisendyn/mahler.hpp"
#include "heisendyn/cyclotomic.hpp"
#include "heisendyn/cocycle.hpp"
#include "heisendyn/columns.hpp"
#include "heisendyn/homoclinic.hpp"
#include "heisendyn/expansiveness.hpp"
#include "heisendyn/cover.hpp"
#include "heisendyn/report.hpp"
#include "heisendyn/cli.hpp"
