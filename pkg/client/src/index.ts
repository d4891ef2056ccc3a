export {
  RewardClient,
  ServiceError,
  type BatchResult,
  type ClientConfig,
  type RewardItem,
} from "./client.js";
export {
  HealthSchema,
  RewardBreakdownSchema,
  type Health,
  type RewardBreakdown,
} from "./schema.js";
