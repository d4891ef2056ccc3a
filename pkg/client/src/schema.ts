/**
 * Response schemas for the reward service.
 *
 * The client never recomputes any score locally; these schemas are the
 * full extent of its knowledge about reward structure. A response that
 * fails validation is a bug on one side or the other and is surfaced as
 * an error rather than passed through.
 */

import { z } from "zod";

export const RewardBreakdownSchema = z
  .object({
    r_perception: z.number(),
    r_spr: z.number(),
    r_rea: z.number(),
    r_format: z.number(),
    r_all: z.number(),
    step_scores: z.array(z.number()),
    flags: z.array(z.string()),
  })
  .strict();

export type RewardBreakdown = z.infer<typeof RewardBreakdownSchema>;

export const HealthSchema = z
  .object({
    version: z.string().min(1),
    judge: z.string().min(1),
  })
  .strict();

export type Health = z.infer<typeof HealthSchema>;
