/** DOM wiring for the two dashboard views. */

import { ApiClient } from './api';
import { PLANS } from './catalog';
import { scatterSvg, trajectorySvg } from './charts';
import { buildScatter } from './pareto';
import { createSimulationGate } from './simulate';
import type { CostModelInfo } from './types';
import {
  applyGreedyVariant,
  copyDayForward,
  sessionFromPrescription,
  setLevel,
  toScheduleRows,
  WhatIfSession,
} from './whatif';

const client = new ApiClient();
const gate = createSimulationGate(client);

const el = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
};

let session: WhatIfSession | null = null;
let costModels: CostModelInfo[] = [];

function showError(message: string | null): void {
  const banner = el<HTMLDivElement>('error-banner');
  banner.textContent = message ?? '';
  banner.style.display = message ? 'block' : 'none';
}

async function refreshPareto(): Promise<void> {
  const region = el<HTMLSelectElement>('region').value;
  const kind = el<HTMLSelectElement>('cost-model').value;
  try {
    const payload = await client.pareto(region, kind);
    const points = buildScatter(payload[kind]);
    el('pareto-chart').innerHTML = scatterSvg(points);
    const front = payload[kind].front_labels.join(', ');
    el('pareto-note').textContent = `front: ${front}`;
    showError(null);
  } catch (error) {
    showError(String(error));
  }
}

function renderTrajectory(): void {
  if (!session?.lastSimulation) return;
  el('trajectory-chart').innerHTML = trajectorySvg(
    session.lastSimulation.predictedDailyNewCases,
    session.ghost?.predictedDailyNewCases ?? null,
  );
  const mean =
    session.lastSimulation.predictedDailyNewCases.reduce((a, b) => a + b, 0) /
    session.lastSimulation.predictedDailyNewCases.length;
  const stringency =
    session.lastSimulation.stringency.reduce((a, b) => a + b, 0) /
    session.lastSimulation.stringency.length;
  el('trajectory-note').textContent =
    `mean daily cases ${mean.toFixed(1)}, mean stringency ${stringency.toFixed(4)}`;
}

function renderGrid(): void {
  if (!session) return;
  const table = el<HTMLTableElement>('schedule-grid');
  const header =
    '<tr><th>plan</th>' +
    session.dates.map((d, i) => `<th title="${d}">${i + 1}</th>`).join('') +
    '</tr>';
  const rows = PLANS.map(plan => {
    const cells = session!.levels
      .map((levels, day) => {
        return (
          `<td><input type="number" min="0" max="${plan.maxLevel}" ` +
          `value="${levels[plan.code]}" data-day="${day}" data-plan="${plan.code}"/></td>`
        );
      })
      .join('');
    return `<tr><th title="${plan.displayName}">${plan.code}</th>${cells}</tr>`;
  }).join('');
  table.innerHTML = header + rows;
  table.querySelectorAll('input').forEach(input => {
    input.addEventListener('change', onLevelEdit);
  });
}

async function simulateSession(): Promise<void> {
  if (!session) return;
  try {
    const updated = await gate.run(session);
    if (updated) {
      session = updated;
      renderTrajectory();
      showError(null);
    }
  } catch (error) {
    showError(String(error));
  }
}

function onLevelEdit(event: Event): void {
  if (!session) return;
  const input = event.currentTarget as HTMLInputElement;
  const day = Number(input.dataset.day);
  const plan = input.dataset.plan!;
  session = setLevel(session, day, plan, Number(input.value));
  input.value = String(session.levels[day][plan]);
  void simulateSession();
}

async function loadPrescription(): Promise<void> {
  const region = el<HTMLSelectElement>('region').value;
  const weightSet = el<HTMLSelectElement>('weight-set').value;
  const kind = el<HTMLSelectElement>('cost-model').value;
  const consecutive = el<HTMLInputElement>('consecutive').checked;
  try {
    const prescription = await client.prescribe({
      region,
      weight_set: weightSet,
      cost_model: kind,
      consecutive,
      horizon: 28,
    });
    session = sessionFromPrescription(prescription, weightSet);
    renderGrid();
    renderTrajectory();
    el('whatif-note').textContent =
      `loaded ${prescription.model_label} for ${region} (${kind})` +
      (prescription.zero_beta ? ' — region has no current cases' : '');
    showError(null);
  } catch (error) {
    showError(String(error));
  }
}

function onCopyDayForward(): void {
  if (!session) return;
  const day = Number(el<HTMLInputElement>('copy-day').value) - 1;
  if (day < 0 || day >= session.dates.length) return;
  session = copyDayForward(session, day);
  renderGrid();
  void simulateSession();
}

function onApplyGreedy(): void {
  if (!session) return;
  const variant = Number(el<HTMLInputElement>('greedy-variant').value);
  const model = costModels.find(m => m.kind === session!.costModel);
  if (!model || variant < 0 || variant > 9) return;
  session = applyGreedyVariant(session, model.base, variant);
  renderGrid();
  void simulateSession();
}

function fillSelect(id: string, values: string[]): void {
  el<HTMLSelectElement>(id).innerHTML = values
    .map(v => `<option value="${v}">${v}</option>`)
    .join('');
}

async function boot(): Promise<void> {
  try {
    const [regions, weightSets, models] = await Promise.all([
      client.regions(),
      client.weightSets(),
      client.costModels(),
    ]);
    costModels = models;
    fillSelect('region', regions);
    fillSelect('weight-set', weightSets.map(w => w.label));
    fillSelect('cost-model', models.map(m => m.kind));
    el<HTMLSelectElement>('cost-model').value = 'realistic';

    el('region').addEventListener('change', refreshPareto);
    el('cost-model').addEventListener('change', refreshPareto);
    el('load-prescription').addEventListener('click', () => void loadPrescription());
    el('copy-forward').addEventListener('click', onCopyDayForward);
    el('apply-greedy').addEventListener('click', onApplyGreedy);

    await refreshPareto();
  } catch (error) {
    showError(String(error));
  }
}

// toScheduleRows is exercised by the gate; re-export keeps tree-shaking honest
export { toScheduleRows };

void boot();
