// SPDX-License-Identifier: Apache-2.0
//
// simris: RIS-assisted physical channel simulator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SIMRIS_MULTI_RIS_HPP
#define SIMRIS_MULTI_RIS_HPP

// Several RISs, each contributing one single-reflection term:
//   C = sum_k G_k Phi_k H_k + D
// RIS-to-RIS hops are not modeled. Every RIS has its own cluster sets and
// substreams (stream tags offset by the RIS index); D is generated once and,
// indoors, shares the clusters of the first RIS.

#include "arrays.hpp"
#include "channel_mmwave.hpp"
#include "channel_sub6.hpp"
#include "errors.hpp"
#include "ris_control.hpp"
#include "scene.hpp"

#include <cstdint>
#include <vector>

namespace simris
{
    struct ris_term
    {
        cmat H; // N_k x Nt
        cmat G; // Nr x N_k
        bool active = true;
        bool los_tx_ris = false, los_ris_rx = false;
    };

    struct multi_realization
    {
        std::vector<ris_term> terms;
        cmat D;
        bool los_direct = false;
        std::uint32_t realization = 0;
        std::uint64_t seed = 0;
    };

    inline cmat compose_multi(const std::vector<ris_term> &terms, const std::vector<ris_phase_config> &phases,
                              const cmat &D)
    {
        if (terms.size() != phases.size())
            throw dimension_error("compose_multi: one phase configuration per RIS is required");
        cmat C = D;
        for (std::size_t k = 0; k < terms.size(); ++k)
        {
            if (!terms[k].active)
                continue;
            C += compose_end_to_end(terms[k].H, terms[k].G, cmat::Zero(D.rows(), D.cols()), phases[k]);
        }
        return C;
    }

    inline multi_realization gen_multi(const multi_ris_scene &ms, const seed_lineage &lineage)
    {
        multi_realization out;
        out.realization = lineage.realization;
        out.seed = lineage.master_seed;
        cluster_set first_tx_ris;
        for (std::size_t k = 0; k < ms.sites.size(); ++k)
        {
            const scene sc = ms.with_ris(k);
            ris_term term;
            term.active = ms.sites[k].active;
            if (sc.is_sub6())
            {
                auto r = gen_sub6(sc, lineage, std::uint32_t(k));
                term.H = std::move(r.H);
                term.G = std::move(r.G);
                term.los_tx_ris = r.los_of(link_kind::tx_ris);
                term.los_ris_rx = r.los_of(link_kind::ris_rx);
                if (k == 0)
                {
                    out.D = std::move(r.D);
                    out.los_direct = r.los_of(link_kind::tx_rx);
                }
            }
            else
            {
                auto links = gen_ris_links(sc, lineage, std::uint32_t(k));
                term.H = std::move(links.H);
                term.G = std::move(links.G);
                term.los_tx_ris = links.los_tx_ris;
                term.los_ris_rx = links.los_ris_rx;
                if (k == 0)
                    first_tx_ris = std::move(links.tx_ris_clusters);
            }
            out.terms.push_back(std::move(term));
        }
        if (!ms.base.is_sub6())
            out.D = gen_direct(ms.with_ris(0), lineage, first_tx_ris, &out.los_direct);
        return out;
    }
}

#endif
