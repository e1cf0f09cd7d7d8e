"""The built-in prelude.

Every list function, fold, map, zip and enumeration is defined equationally
in the source language so its unfolding shows up in traces with a quotable
justification; only integer arithmetic, structural comparison, character
codecs and show-for-Int are primitives. Users may shadow any of these names.
"""

from __future__ import annotations

from functools import lru_cache

from . import core, parser, typecheck

PRELUDE_SOURCE = """\
even, odd :: Int -> Bool
even n = mod n 2 == 0
odd n = mod n 2 /= 0

max, min :: a -> a -> a
max x y | x <= y = y
        | otherwise = x
min x y | x <= y = x
        | otherwise = y

fst :: (a,b) -> a
fst (x,_) = x

snd :: (a,b) -> b
snd (_,y) = y

(&&), (||) :: Bool -> Bool -> Bool
True && x = x
False && _ = False
True || _ = True
False || x = x

head :: [a] -> a
head (x:_) = x

tail :: [a] -> [a]
tail (_:xs) = xs

(++) :: [a] -> [a] -> [a]
[] ++ ys = ys
(x:xs) ++ ys = x : (xs ++ ys)

(!!) :: [a] -> Int -> a
(x:_) !! 0 = x
(_:xs) !! n | n > 0 = xs !! (n - 1)

length :: [a] -> Int
length [] = 0
length (_:xs) = 1 + length xs

reverse :: [a] -> [a]
reverse xs = revApp xs []
  where revApp [] acc = acc
        revApp (y:ys) acc = revApp ys (y:acc)

init :: [a] -> [a]
init [_] = []
init (x:xs) = x : init xs

last :: [a] -> a
last [x] = x
last (_:xs) = last xs

sum, product :: [Int] -> Int
sum [] = 0
sum (x:xs) = x + sum xs
product [] = 1
product (x:xs) = x * product xs

and, or :: [Bool] -> Bool
and [] = True
and (x:xs) = x && and xs
or [] = False
or (x:xs) = x || or xs

take, drop :: Int -> [a] -> [a]
take n _ | n <= 0 = []
take _ [] = []
take n (x:xs) = x : take (n - 1) xs
drop n xs | n <= 0 = xs
drop _ [] = []
drop n (_:xs) = drop (n - 1) xs

maximum, minimum :: [a] -> a
maximum [x] = x
maximum (x:xs) = max x (maximum xs)
minimum [x] = x
minimum (x:xs) = min x (minimum xs)

concat :: [[a]] -> [a]
concat [] = []
concat (xs:xss) = xs ++ concat xss

repeat :: a -> [a]
repeat x = x : repeat x

replicate :: Int -> a -> [a]
replicate n x | n <= 0 = []
              | otherwise = x : replicate (n - 1) x

cycle :: [a] -> [a]
cycle xs = ys where ys = xs ++ ys

iterate :: (a -> a) -> a -> [a]
iterate f x = x : iterate f (f x)

map :: (a -> b) -> [a] -> [b]
map _ [] = []
map f (x:xs) = f x : map f xs

filter :: (a -> Bool) -> [a] -> [a]
filter _ [] = []
filter p (x:xs) | p x = x : filter p xs
                | otherwise = filter p xs

foldr :: (a -> b -> b) -> b -> [a] -> b
foldr f z [] = z
foldr f z (x:xs) = f x (foldr f z xs)

foldl :: (a -> b -> a) -> a -> [b] -> a
foldl f z [] = z
foldl f z (x:xs) = foldl f (f z x) xs

foldl' :: (a -> b -> a) -> a -> [b] -> a
foldl' f z [] = z
foldl' f !z (x:xs) = foldl' f (f z x) xs

(.) :: (b -> c) -> (a -> b) -> a -> c
(.) f g x = f (g x)

($), ($!) :: (a -> b) -> a -> b
($) f x = f x
($!) f !x = f x

zip :: [a] -> [b] -> [(a,b)]
zip (x:xs) (y:ys) = (x,y) : zip xs ys
zip _ _ = []

zipWith :: (a -> b -> c) -> [a] -> [b] -> [c]
zipWith f (x:xs) (y:ys) = f x y : zipWith f xs ys
zipWith _ _ _ = []

takeWhile, dropWhile :: (a -> Bool) -> [a] -> [a]
takeWhile _ [] = []
takeWhile p (x:xs) | p x = x : takeWhile p xs
                   | otherwise = []
dropWhile _ [] = []
dropWhile p (x:xs) | p x = dropWhile p xs
                   | otherwise = x : xs

any, all :: (a -> Bool) -> [a] -> Bool
any p xs = or (map p xs)
all p xs = and (map p xs)

lookup :: a -> [(a,b)] -> Maybe b
lookup _ [] = Nothing
lookup k ((x,v):xs) | k == x = Just v
                    | otherwise = lookup k xs

enumFrom :: Int -> [Int]
enumFrom n = n : enumFrom (n + 1)

enumFromTo :: Int -> Int -> [Int]
enumFromTo m n | m <= n = m : enumFromTo (m + 1) n
               | otherwise = []

enumFromThen :: Int -> Int -> [Int]
enumFromThen m n = m : enumFromThen n (n + n - m)

enumFromThenTo :: Int -> Int -> Int -> [Int]
enumFromThenTo m n p | m <= p && n >= m = m : enumFromThenTo n (n + n - m) p
                     | m >= p && n < m = m : enumFromThenTo n (n + n - m) p
                     | otherwise = []
"""

# Names whose semantics live in the machine, typed here (plus `otherwise`,
# a plain constant): see typecheck.base_env.
PRIMITIVE_NAMES = (
    "+", "-", "*", "div", "mod", "negate",
    "==", "/=", "<", "<=", ">", ">=", "compare",
    "chr", "ord", "show",
    "isAlpha", "isDigit", "isAlphaNum", "isUpper", "isLower",
)


@lru_cache(maxsize=1)
def _load():
    program = parser.parse_program(PRELUDE_SOURCE)
    env, inf = typecheck.infer_program(program, typecheck.base_env())
    bindings = core.desugar_program(program, inf.constructors)
    return env, bindings


def load_prelude() -> tuple[typecheck.TypeEnv, core.CoreProgram]:
    """Type environment and core bindings for every prelude name."""
    env, bindings = _load()
    return dict(env), core.CoreProgram(dict(bindings.bindings),
                                       dict(bindings.constructors))


def prelude_source() -> str:
    return PRELUDE_SOURCE
